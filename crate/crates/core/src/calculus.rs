//! Second derivatives of `F²`.
//!
//! [`jet_of_norm_squared`] propagates hyper-dual numbers through the norm's
//! evaluator, one pass per unordered coordinate pair. [`finite_difference_hessian`]
//! is an independent central-difference estimate used to cross-check it.

use nalgebra::DMatrix;

use crate::dual::HyperDual;
use crate::error::{Error, Result};
use crate::norms::{require_nonzero, MinkowskiNorm};

/// Value, gradient and Hessian of a scalar function at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderJet {
    pub value: f64,
    pub grad: Vec<f64>,
    /// Symmetric by construction: each off-diagonal pair is written from one pass.
    pub hess: DMatrix<f64>,
}

/// `F²(y)` with its gradient and (unhalved) Hessian.
pub fn jet_of_norm_squared(norm: &MinkowskiNorm, y: &[f64]) -> Result<SecondOrderJet> {
    norm.check_dimension(y.len())?;
    require_nonzero(y)?;
    let n = y.len();
    let mut grad = vec![0.0; n];
    let mut hess = DMatrix::zeros(n, n);
    let mut value = 0.0;
    let mut seeded = vec![HyperDual::default(); n];
    for i in 0..n {
        for j in i..n {
            for (k, s) in seeded.iter_mut().enumerate() {
                *s = HyperDual::variable(y[k], if k == i { 1.0 } else { 0.0 }, if k == j { 1.0 } else { 0.0 });
            }
            let r = norm.norm_squared_hyper(&seeded)?;
            if i == j {
                grad[i] = r.e1;
                value = r.re;
            }
            hess[(i, j)] = r.e12;
            hess[(j, i)] = r.e12;
        }
    }
    Ok(SecondOrderJet { value, grad, hess })
}

/// `1e-4 · max(1, |y|)`.
pub fn default_step(y: &[f64]) -> f64 {
    1e-4 * euclidean_length(y).max(1.0)
}

pub(crate) fn euclidean_length(y: &[f64]) -> f64 {
    y.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Central-difference Hessian of `F²`, symmetrized.
///
/// Requires `0 < h < |y| / 100`.
pub fn finite_difference_hessian(norm: &MinkowskiNorm, y: &[f64], h: f64) -> Result<DMatrix<f64>> {
    norm.check_dimension(y.len())?;
    require_nonzero(y)?;
    let len = euclidean_length(y);
    if !(h > 0.0 && h < len / 100.0) {
        return Err(Error::InvalidArgument(format!("step h = {h} must lie in (0, |y|/100) = (0, {})", len / 100.0)));
    }
    let n = y.len();
    let f2 = |p: &[f64]| -> Result<f64> {
        let f = norm.eval(p)?;
        Ok(f * f)
    };
    let mut p = y.to_vec();
    let center = f2(&p)?;
    let mut hess = DMatrix::zeros(n, n);
    for i in 0..n {
        p[i] = y[i] + h;
        let plus = f2(&p)?;
        p[i] = y[i] - h;
        let minus = f2(&p)?;
        p[i] = y[i];
        hess[(i, i)] = (plus - 2.0 * center + minus) / (h * h);
        for j in (i + 1)..n {
            let mut corner = |si: f64, sj: f64| -> Result<f64> {
                p[i] = y[i] + si * h;
                p[j] = y[j] + sj * h;
                let v = f2(&p);
                p[i] = y[i];
                p[j] = y[j];
                v
            };
            let pp = corner(1.0, 1.0)?;
            let pm = corner(1.0, -1.0)?;
            let mp = corner(-1.0, 1.0)?;
            let mm = corner(-1.0, -1.0)?;
            hess[(i, j)] = (pp - pm - mp + mm) / (4.0 * h * h);
            hess[(j, i)] = (pp - mp - pm + mm) / (4.0 * h * h);
        }
    }
    Ok((&hess + hess.transpose()) * 0.5)
}
