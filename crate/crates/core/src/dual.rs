//! Hyper-dual numbers: truncated second-order Taylor arithmetic.
//!
//! A hyper-dual number `a + b ε₁ + c ε₂ + d ε₁ε₂` with `ε₁² = ε₂² = 0`
//! carries a value, two independent first-order parts and their mixed
//! second-order part. Seeding `ε₁` along `eᵢ` and `ε₂` along `eⱼ` and
//! evaluating a function gives `∂ᵢf` in the `ε₁` slot and `∂ᵢ∂ⱼf` in the
//! `ε₁ε₂` slot, exact up to floating-point rounding.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar arithmetic shared by `f64` and [`HyperDual`], so evaluators can be
/// written once and run on either.
pub trait Real:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn constant(v: f64) -> Self;
    /// The real (value) part.
    fn value(self) -> f64;
    fn powi(self, n: i32) -> Self;
    /// `self^p` for real `p`. Callers guarantee `value() > 0` when `p` is not an integer.
    fn powf(self, p: f64) -> Self;
    fn sqrt(self) -> Self {
        self.powf(0.5)
    }
}

impl Real for f64 {
    #[inline]
    fn constant(v: f64) -> Self {
        v
    }
    #[inline]
    fn value(self) -> f64 {
        self
    }
    #[inline]
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    #[inline]
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HyperDual {
    pub re: f64,
    pub e1: f64,
    pub e2: f64,
    pub e12: f64,
}

impl HyperDual {
    pub const fn new(re: f64, e1: f64, e2: f64, e12: f64) -> Self {
        Self { re, e1, e2, e12 }
    }

    /// A variable with value `re` and first-order seeds `d1`, `d2`.
    pub const fn variable(re: f64, d1: f64, d2: f64) -> Self {
        Self::new(re, d1, d2, 0.0)
    }

    /// Applies a scalar function given its value and first two derivatives at `re`.
    #[inline]
    fn chain(self, f: f64, df: f64, d2f: f64) -> Self {
        Self { re: f, e1: df * self.e1, e2: df * self.e2, e12: df * self.e12 + d2f * self.e1 * self.e2 }
    }
}

impl Add for HyperDual {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.e1 + o.e1, self.e2 + o.e2, self.e12 + o.e12)
    }
}

impl Sub for HyperDual {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.e1 - o.e1, self.e2 - o.e2, self.e12 - o.e12)
    }
}

impl Mul for HyperDual {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re,
            self.re * o.e1 + self.e1 * o.re,
            self.re * o.e2 + self.e2 * o.re,
            self.re * o.e12 + self.e1 * o.e2 + self.e2 * o.e1 + self.e12 * o.re,
        )
    }
}

impl Div for HyperDual {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let inv = o.re.recip();
        self * o.chain(inv, -inv * inv, 2.0 * inv * inv * inv)
    }
}

impl Neg for HyperDual {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.e1, -self.e2, -self.e12)
    }
}

impl Real for HyperDual {
    #[inline]
    fn constant(v: f64) -> Self {
        Self::new(v, 0.0, 0.0, 0.0)
    }
    #[inline]
    fn value(self) -> f64 {
        self.re
    }
    fn powi(self, n: i32) -> Self {
        match n {
            0 => Self::constant(1.0),
            1 => self,
            _ => {
                let x = self.re;
                let nf = f64::from(n);
                self.chain(x.powi(n), nf * x.powi(n - 1), nf * (nf - 1.0) * x.powi(n - 2))
            }
        }
    }
    fn powf(self, p: f64) -> Self {
        let x = self.re;
        let f = x.powf(p);
        // f' = p x^(p-1), f'' = p(p-1) x^(p-2), written via f/x to share one powf.
        let df = p * f / x;
        let d2f = (p - 1.0) * df / x;
        self.chain(f, df, d2f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn product_rule_mixed_part() {
        // f(x, y) = x² y at (2, 3): f_x = 12, f_y = 4, f_xy = 4
        let x = HyperDual::variable(2.0, 1.0, 0.0);
        let y = HyperDual::variable(3.0, 0.0, 1.0);
        let f = x * x * y;
        assert_eq!(f, HyperDual::new(12.0, 12.0, 4.0, 4.0));
    }

    #[test]
    fn powf_second_derivative() {
        // d²/dx² x^(1/4) at x = 16 is (1/4)(-3/4) 16^(-7/4) = -3/(16·128)
        let x = HyperDual::variable(16.0, 1.0, 1.0);
        let f = x.powf(0.25);
        assert_relative_eq!(f.re, 2.0);
        assert_relative_eq!(f.e1, 0.25 * 16f64.powf(-0.75));
        assert_relative_eq!(f.e12, -3.0 / 2048.0, max_relative = 1e-14);
    }

    #[test]
    fn division_matches_quotient_rule() {
        // f = x / y, f_xy = -1/y² at (1, 2)
        let x = HyperDual::variable(1.0, 1.0, 0.0);
        let y = HyperDual::variable(2.0, 0.0, 1.0);
        let f = x / y;
        assert_relative_eq!(f.re, 0.5);
        assert_relative_eq!(f.e1, 0.5);
        assert_relative_eq!(f.e2, -0.25);
        assert_relative_eq!(f.e12, -0.25);
    }

    #[test]
    fn powi_agrees_with_repeated_multiplication() {
        let x = HyperDual::variable(1.3, 0.7, -0.2);
        let a = x.powi(4);
        let b = x * x * x * x;
        assert_relative_eq!(a.re, b.re, max_relative = 1e-14);
        assert_relative_eq!(a.e1, b.e1, max_relative = 1e-14);
        assert_relative_eq!(a.e2, b.e2, max_relative = 1e-14);
        assert_relative_eq!(a.e12, b.e12, max_relative = 1e-14);
    }
}
