//! The fundamental tensor `g = ½ ∇²(F²)` and the strong-convexity scan.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::jet_of_norm_squared;
use crate::closed_form;
use crate::error::{Error, Result};
use crate::norms::MinkowskiNorm;

/// Minimum eigenvalue required for a direction to count as positive definite.
pub const POSITIVE_DEFINITE_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalTensor {
    pub at: Vec<f64>,
    pub g: DMatrix<f64>,
    pub trace: f64,
    pub det: f64,
    pub min_eigenvalue: f64,
}

impl FundamentalTensor {
    /// `uᵀ g v`.
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                acc += ui * self.g[(i, j)] * vj;
            }
        }
        acc
    }
}

/// Smallest eigenvalue of a symmetric 2×2 matrix `[[a, b], [b, d]]`.
pub fn min_eigenvalue_2x2(a: f64, b: f64, d: f64) -> f64 {
    let mean = 0.5 * (a + d);
    let half_gap = (0.5 * (a - d)).hypot(b);
    mean - half_gap
}

pub fn fundamental_tensor(norm: &MinkowskiNorm, y: &[f64]) -> Result<FundamentalTensor> {
    let jet = jet_of_norm_squared(norm, y)?;
    let g = jet.hess * 0.5;
    let n = g.nrows();
    let trace = g.trace();
    let (det, min_eigenvalue) = if n == 2 {
        let (a, b, d) = (g[(0, 0)], g[(0, 1)], g[(1, 1)]);
        (a * d - b * b, min_eigenvalue_2x2(a, b, d))
    } else {
        let eig = nalgebra::SymmetricEigen::new(g.clone());
        (eig.eigenvalues.product(), eig.eigenvalues.min())
    };
    Ok(FundamentalTensor { at: y.to_vec(), g, trace, det, min_eigenvalue })
}

/// Result of scanning `g` around the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub pass: bool,
    pub min_eigenvalue: f64,
    pub argmin_angle: f64,
    pub n_angles: usize,
    /// Present only for the `c = 3` quartic metric.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormCheck>,
}

/// Sampled trace/det of `g` compared with their closed forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub trace_on_axis: f64,
    pub det_on_axis: f64,
    pub max_trace_rel_error: f64,
    pub max_det_rel_error: f64,
}

pub fn is_paper_metric(norm: &MinkowskiNorm) -> bool {
    norm.as_mth_root().and_then(|m| m.quartic_parameter()) == Some(3.0)
}

/// Checks that `g` is positive definite in `n_angles` uniformly spaced
/// directions. By 0-homogeneity of `g` the circle covers every direction.
pub fn check_strong_convexity(norm: &MinkowskiNorm, n_angles: usize) -> Result<ConvexityReport> {
    if norm.dimension() != 2 {
        return Err(Error::NotPlanar(norm.dimension()));
    }
    if n_angles < 64 {
        return Err(Error::InvalidArgument(format!("n_angles = {n_angles} is below 64")));
    }
    let samples: Vec<(usize, FundamentalTensor)> = (0..n_angles)
        .into_par_iter()
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n_angles as f64;
            fundamental_tensor(norm, &[theta.cos(), theta.sin()]).map(|g| (k, g))
        })
        .collect::<Result<_>>()?;

    let (k_min, min_eigenvalue) = samples
        .iter()
        .map(|(k, g)| (*k, g.min_eigenvalue))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });

    let closed_form = is_paper_metric(norm).then(|| {
        let mut check = ClosedFormCheck {
            trace_on_axis: samples[0].1.trace,
            det_on_axis: samples[0].1.det,
            max_trace_rel_error: 0.0,
            max_det_rel_error: 0.0,
        };
        for (_, g) in &samples {
            let y = [g.at[0], g.at[1]];
            let (t, d) = (closed_form::trace(y), closed_form::det(y));
            check.max_trace_rel_error = check.max_trace_rel_error.max(((g.trace - t) / t).abs());
            check.max_det_rel_error = check.max_det_rel_error.max(((g.det - d) / d).abs());
        }
        check
    });

    Ok(ConvexityReport {
        pass: min_eigenvalue > POSITIVE_DEFINITE_THRESHOLD,
        min_eigenvalue,
        argmin_angle: 2.0 * PI * k_min as f64 / n_angles as f64,
        n_angles,
        closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).abs().max()
    }

    #[test]
    fn paper_metric_examples() {
        let f = MinkowskiNorm::paper_metric();
        let g = fundamental_tensor(&f, &[1.0, 0.0]).unwrap();
        assert!(max_abs_diff(&g.g, &DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.5])) <= 1e-14);
        assert_relative_eq!(g.trace, 2.5, max_relative = 1e-14);
        assert_relative_eq!(g.det, 1.5, max_relative = 1e-14);
        assert_relative_eq!(g.min_eigenvalue, 1.0, max_relative = 1e-14);

        let g = fundamental_tensor(&f, &[1.0, 1.0]).unwrap();
        let s = 1.0 / (2.0 * 5f64.powf(1.5));
        let expected = DMatrix::from_row_slice(2, 2, &[20.0, 5.0, 5.0, 20.0]) * s;
        assert!(max_abs_diff(&g.g, &expected) <= 1e-14);
    }

    #[test]
    fn euclidean_tensor_is_identity() {
        let g = fundamental_tensor(&MinkowskiNorm::euclidean(2), &[0.3, -0.4]).unwrap();
        assert!(max_abs_diff(&g.g, &DMatrix::identity(2, 2)) <= 1e-15);
        let g = fundamental_tensor(&MinkowskiNorm::euclidean(4), &[0.3, -0.4, 2.0, 0.1]).unwrap();
        assert_relative_eq!(g.min_eigenvalue, 1.0, max_relative = 1e-12);
        assert_relative_eq!(g.det, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn two_by_two_eigenvalue() {
        assert_relative_eq!(min_eigenvalue_2x2(2.0, 1.0, 2.0), 1.0);
        assert_relative_eq!(min_eigenvalue_2x2(1.0, 0.0, 1.5), 1.0);
        assert_relative_eq!(min_eigenvalue_2x2(0.0, 2.0, 0.0), -2.0);
    }

    #[test]
    fn convexity_scan_paper_metric() {
        let r = check_strong_convexity(&MinkowskiNorm::paper_metric(), 4096).unwrap();
        assert!(r.pass);
        assert!(r.min_eigenvalue > 0.5);
        let cf = r.closed_form.unwrap();
        assert_relative_eq!(cf.trace_on_axis, 2.5, max_relative = 1e-14);
        assert_relative_eq!(cf.det_on_axis, 1.5, max_relative = 1e-14);
        assert!(cf.max_trace_rel_error <= 1e-10);
        assert!(cf.max_det_rel_error <= 1e-10);
    }

    #[test]
    fn convexity_scan_euclidean_and_c12() {
        let r = check_strong_convexity(&MinkowskiNorm::euclidean(2), 64).unwrap();
        assert!(r.pass);
        assert_relative_eq!(r.min_eigenvalue, 1.0, max_relative = 1e-14);
        assert!(r.closed_form.is_none());

        let r = check_strong_convexity(&MinkowskiNorm::quartic_family(12.0), 4096).unwrap();
        assert!(!r.pass);
        assert!(r.min_eigenvalue < 0.0);
        let g = fundamental_tensor(&MinkowskiNorm::quartic_family(12.0), &[r.argmin_angle.cos(), r.argmin_angle.sin()])
            .unwrap();
        assert!(g.det < 0.0);
    }

    #[test]
    fn convexity_preconditions() {
        assert!(matches!(check_strong_convexity(&MinkowskiNorm::paper_metric(), 63), Err(Error::InvalidArgument(_))));
        assert!(matches!(check_strong_convexity(&MinkowskiNorm::euclidean(3), 128), Err(Error::NotPlanar(3))));
    }

    #[test]
    fn report_json_shape() {
        let r = check_strong_convexity(&MinkowskiNorm::euclidean(2), 64).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["argmin_angle", "min_eigenvalue", "n_angles", "pass"]);
    }

    #[test]
    fn riemannian_tensor_is_constant() {
        let f = MinkowskiNorm::quartic_family(2.0);
        let g0 = fundamental_tensor(&f, &[1.0, 0.0]).unwrap();
        for k in 0..64 {
            let t = k as f64 * 0.1;
            let y = [t.cos() * 1.7, t.sin() * 1.7];
            let g = fundamental_tensor(&f, &y).unwrap();
            assert!(max_abs_diff(&g.g, &g0.g) <= 1e-10);
            let f2 = f.eval(&y).unwrap().powi(2);
            assert_relative_eq!(g.inner(&y, &y), f2, max_relative = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn tensor_invariants(theta in 0.0f64..std::f64::consts::TAU, r in 0.1f64..10.0, lambda in 0.01f64..100.0) {
            let f = MinkowskiNorm::paper_metric();
            let y = [r * theta.cos(), r * theta.sin()];
            let g = fundamental_tensor(&f, &y).unwrap();
            let gl = fundamental_tensor(&f, &[lambda * y[0], lambda * y[1]]).unwrap();
            let gneg = fundamental_tensor(&f, &[-y[0], -y[1]]).unwrap();
            prop_assert!(max_abs_diff(&g.g, &gl.g) <= 1e-10);
            prop_assert!(max_abs_diff(&g.g, &gneg.g) <= 1e-12);
            let f2 = f.eval(&y).unwrap().powi(2);
            prop_assert!((g.inner(&y, &y) - f2).abs() <= 1e-10 * f2);
            prop_assert!((g.trace - closed_form::trace(y)).abs() <= 1e-10 * closed_form::trace(y));
            prop_assert!((g.det - closed_form::det(y)).abs() <= 1e-10 * closed_form::det(y));
        }
    }
}
