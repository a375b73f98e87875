//! Hand-derived formulas for the quartic metric `(y₁⁴ + 3y₁²y₂² + y₂⁴)^(1/4)`.
//!
//! These are used as cross-checks against the generic machinery, which never
//! calls into this module.

use std::f64::consts::SQRT_2;

fn quartic(y: [f64; 2]) -> f64 {
    let (a, b) = (y[0] * y[0], y[1] * y[1]);
    a * a + 3.0 * a * b + b * b
}

/// The fundamental tensor, row-major `[g11, g12, g21, g22]`.
pub fn tensor(y: [f64; 2]) -> [f64; 4] {
    let [y1, y2] = y;
    let (a, b) = (y1 * y1, y2 * y2);
    let den = 2.0 * quartic(y).powf(1.5);
    let g11 = 2.0 * a * a * a + 9.0 * a * a * b + 6.0 * a * b * b + 3.0 * b * b * b;
    let g12 = 5.0 * a * y1 * b * y2;
    let g22 = 3.0 * a * a * a + 6.0 * a * a * b + 9.0 * a * b * b + 2.0 * b * b * b;
    [g11 / den, g12 / den, g12 / den, g22 / den]
}

pub fn trace(y: [f64; 2]) -> f64 {
    let s = y[0] * y[0] + y[1] * y[1];
    5.0 * s * s * s / (2.0 * quartic(y).powf(1.5))
}

pub fn det(y: [f64; 2]) -> f64 {
    let (a, b) = (y[0] * y[0], y[1] * y[1]);
    3.0 * (2.0 * a * a + a * b + 2.0 * b * b) / (4.0 * quartic(y))
}

/// Numerator of the relative energy: `E_X(y) = numerator / (4 P(y)^(3/2))`.
pub fn energy_numerator(x: [f64; 2], y: [f64; 2]) -> f64 {
    let [x1, x2] = x;
    let [y1, y2] = y;
    let (a, b) = (x1 * x1, x2 * x2);
    (2.0 * a + 3.0 * b) * y1.powi(6)
        + (9.0 * a + 6.0 * b) * y1.powi(4) * y2 * y2
        + 10.0 * x1 * x2 * y1.powi(3) * y2.powi(3)
        + (6.0 * a + 9.0 * b) * y1 * y1 * y2.powi(4)
        + (3.0 * a + 2.0 * b) * y2.powi(6)
}

pub fn energy(x: [f64; 2], y: [f64; 2]) -> f64 {
    energy_numerator(x, y) / (4.0 * quartic(y).powf(1.5))
}

/// The factored critical-point condition
/// `y₁y₂(y₁−y₂)(y₁+y₂)(y₁²+y₂²)(X₁y₂−X₂y₁)²`.
pub fn crit_condition(x: [f64; 2], y: [f64; 2]) -> f64 {
    let [y1, y2] = y;
    let cross = x[0] * y2 - x[1] * y1;
    y1 * y2 * (y1 - y2) * (y1 + y2) * (y1 * y1 + y2 * y2) * cross * cross
}

/// Relative energy at each critical locus, by direct evaluation of [`energy`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalValues {
    /// `½F²(X)`.
    pub at_x: f64,
    /// On the y₁ axis.
    pub axis_1: f64,
    /// On the y₂ axis.
    pub axis_2: f64,
    /// Along (1, 1).
    pub diagonal: f64,
    /// Along (1, −1).
    pub anti_diagonal: f64,
}

pub fn critical_values(x: [f64; 2]) -> CriticalValues {
    let [x1, x2] = x;
    let (a, b) = (x1 * x1, x2 * x2);
    let root5 = 5f64.sqrt();
    CriticalValues {
        at_x: 0.5 * quartic(x).sqrt(),
        axis_1: 0.5 * a + 0.75 * b,
        axis_2: 0.75 * a + 0.5 * b,
        diagonal: (2.0 * a + x1 * x2 + 2.0 * b) / (2.0 * root5),
        anti_diagonal: (2.0 * a - x1 * x2 + 2.0 * b) / (2.0 * root5),
    }
}

/// Unit-Euclidean directions of the axis and diagonal loci, for reference.
pub const UNIVERSAL_DIRECTIONS: [[f64; 2]; 4] =
    [[1.0, 0.0], [0.0, 1.0], [SQRT_2 / 2.0, SQRT_2 / 2.0], [SQRT_2 / 2.0, -SQRT_2 / 2.0]];

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tensor_matches_trace_and_det() {
        for y in [[1.0, 0.0], [0.3, -1.7], [2.0, 5.0]] {
            let g = tensor(y);
            assert_relative_eq!(g[0] + g[3], trace(y), max_relative = 1e-14);
            assert_relative_eq!(g[0] * g[3] - g[1] * g[2], det(y), max_relative = 1e-13);
        }
        assert_relative_eq!(trace([1.0, 0.0]), 2.5);
        assert_relative_eq!(det([1.0, 0.0]), 1.5);
    }

    #[test]
    fn energy_is_half_quadratic_form() {
        let (x, y) = ([1.0, 3.0], [0.4, -0.9]);
        let g = tensor(y);
        let q = g[0] * x[0] * x[0] + 2.0 * g[1] * x[0] * x[1] + g[3] * x[1] * x[1];
        assert_relative_eq!(energy(x, y), 0.5 * q, max_relative = 1e-14);
    }

    #[test]
    fn critical_values_match_direct_evaluation() {
        for x in [[1.0, 0.0], [1.0, 3.0], [-0.7, 0.2]] {
            let cv = critical_values(x);
            assert_relative_eq!(cv.at_x, energy(x, x), max_relative = 1e-14);
            assert_relative_eq!(cv.axis_1, energy(x, [1.0, 0.0]), max_relative = 1e-14);
            assert_relative_eq!(cv.axis_2, energy(x, [0.0, 1.0]), max_relative = 1e-14);
            assert_relative_eq!(cv.diagonal, energy(x, [1.0, 1.0]), max_relative = 1e-14);
            assert_relative_eq!(cv.anti_diagonal, energy(x, [1.0, -1.0]), max_relative = 1e-14);
        }
    }

    #[test]
    fn crit_condition_examples() {
        assert_eq!(crit_condition([1.0, 3.0], [1.0, 3.0]), 0.0);
        assert_eq!(crit_condition([0.3, -7.0], [1.0, 1.0]), 0.0);
        // 2 · (−1) · 3 · 5 · 2²
        assert_eq!(crit_condition([1.0, 0.0], [1.0, 2.0]), -120.0);
    }
}
