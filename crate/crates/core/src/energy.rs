//! Relative length and relative energy, their profile along the planar
//! indicatrix, and the critical points of that profile.
//!
//! For a fixed vector `X` the relative energy `E_X(y) = ½ Xᵀ g(y) X` is
//! homogeneous of degree zero in `y`, so on the plane it is a 2π-periodic
//! function of the Euclidean angle of `y`. Critical points are located on that
//! angle: sign changes of `dE/dθ` are bisected, and flat spots where `dE/dθ`
//! touches zero without changing sign (horizontal inflections) are found as
//! zeros of `d²E/dθ²` with a vanishing first derivative.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{require_nonzero, MinkowskiNorm, MthRootMetric};
use crate::poly::Polynomial;
use crate::tensor::fundamental_tensor;

/// Default angular grid for profiles and critical-point bracketing.
pub const DEFAULT_ANGLES: usize = 4096;

/// Critical points closer than this (in radians) are merged.
pub const MERGE_DISTANCE: f64 = 1e-6;

/// Accepted `|dE/dθ|` at a refined critical point, relative to `max(1, max E)`.
pub const DERIVATIVE_TOLERANCE: f64 = 1e-8;

/// A profile counts as constant when `max − min ≤ 1e-10 · |mean|`.
pub const CONSTANT_PROFILE_SPREAD: f64 = 1e-10;

const BISECTION_WIDTH: f64 = 1e-13;

/// Below this `|d²E/dθ²|` (relative to `max(1, max E)`) a sign change of
/// `dE/dθ` is treated as a root of multiplicity ≥ 3 and refined on the third
/// derivative instead, since bisecting a flat first derivative only resolves
/// the root to the cube root of the rounding noise.
const DEGENERATE_CURVATURE: f64 = 1e-3;

/// `|X|_y = √(Xᵀ g(y) X)`.
///
/// `y` is first scaled onto the indicatrix; the result does not depend on
/// that scaling because `g` is 0-homogeneous.
pub fn relative_length(norm: &MinkowskiNorm, x: &[f64], y: &[f64]) -> Result<f64> {
    let q = 2.0 * relative_energy(norm, x, y)?;
    if q < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "Xᵀ g(y) X = {q} is negative; g is not positive definite at y = {y:?}"
        )));
    }
    Ok(q.sqrt())
}

/// `E_X(y) = ½ Xᵀ g(y) X`.
pub fn relative_energy(norm: &MinkowskiNorm, x: &[f64], y: &[f64]) -> Result<f64> {
    norm.check_dimension(x.len())?;
    norm.check_dimension(y.len())?;
    require_nonzero(y)?;
    let y = norm.normalize(y)?;
    let g = fundamental_tensor(norm, &y)?;
    Ok(0.5 * g.inner(x, x))
}

/// `E_X` at the indicatrix point with Euclidean angle `theta`.
pub fn energy_at_angle(norm: &MinkowskiNorm, x: &[f64], theta: f64) -> Result<f64> {
    let g = fundamental_tensor(norm, &[theta.cos(), theta.sin()])?;
    Ok(0.5 * g.inner(x, x))
}

fn check_planar(norm: &MinkowskiNorm, x: &[f64]) -> Result<()> {
    if norm.dimension() != 2 {
        return Err(Error::NotPlanar(norm.dimension()));
    }
    norm.check_dimension(x.len())?;
    require_nonzero(x)
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Angular distance on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// `E_X` sampled on a uniform angle grid over the indicatrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyProfile {
    pub x: Vec<f64>,
    pub angles: Vec<f64>,
    pub values: Vec<f64>,
    pub metric_id: String,
}

impl EnergyProfile {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Index and value of the smallest sample (first one on ties).
    pub fn min(&self) -> (usize, f64) {
        self.values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
    }

    pub fn max(&self) -> (usize, f64) {
        self.values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `max − min`.
    pub fn spread(&self) -> f64 {
        self.max().1 - self.min().1
    }

    pub fn is_constant(&self) -> bool {
        self.spread() <= CONSTANT_PROFILE_SPREAD * self.mean().abs()
    }

    /// CSV with header `theta,energy` and 17 significant digits per value.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(48 * (self.len() + 1));
        out.push_str("theta,energy\n");
        for (t, e) in self.angles.iter().zip(&self.values) {
            let _ = writeln!(out, "{},{}", format_f64(*t), format_f64(*e));
        }
        out
    }
}

/// Fixed 17-significant-digit scientific notation.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn energy_profile(norm: &MinkowskiNorm, x: &[f64], n_angles: usize) -> Result<EnergyProfile> {
    check_planar(norm, x)?;
    if n_angles < 256 {
        return Err(Error::InvalidArgument(format!("n_angles = {n_angles} is below 256")));
    }
    let angles: Vec<f64> = (0..n_angles).map(|k| TAU * k as f64 / n_angles as f64).collect();
    let values = angles
        .par_iter()
        .map(|&t| {
            let y = norm.indicatrix_point(t)?;
            let g = fundamental_tensor(norm, &y)?;
            Ok(0.5 * g.inner(x, x))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(EnergyProfile { x: x.to_vec(), angles, values, metric_id: norm.description().to_owned() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    LocalMin,
    LocalMax,
    Inflection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub theta: f64,
    /// Point on the indicatrix.
    pub y: Vec<f64>,
    pub energy: f64,
    pub kind: CriticalKind,
    pub derivative_residual: f64,
    /// Sine of the angle between `∇Ẽ_X` and `∇P`; only for m-th-root metrics.
    pub lagrange_residual: Option<f64>,
}

/// `E_X(θ)` with finite-difference derivatives in `θ`.
struct AngularEnergy<'a> {
    norm: &'a MinkowskiNorm,
    x: &'a [f64],
    step: f64,
}

impl AngularEnergy<'_> {
    fn value(&self, theta: f64) -> Result<f64> {
        energy_at_angle(self.norm, self.x, theta)
    }

    fn stencil(&self, theta: f64) -> Result<[f64; 5]> {
        let h = self.step;
        Ok([
            self.value(theta - 2.0 * h)?,
            self.value(theta - h)?,
            self.value(theta)?,
            self.value(theta + h)?,
            self.value(theta + 2.0 * h)?,
        ])
    }

    /// Fourth-order central difference for `dE/dθ`.
    fn first(&self, theta: f64) -> Result<f64> {
        let [m2, m1, _, p1, p2] = self.stencil(theta)?;
        Ok((m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * self.step))
    }

    /// Fourth-order central difference for `d²E/dθ²`.
    fn second(&self, theta: f64) -> Result<f64> {
        let [m2, m1, c, p1, p2] = self.stencil(theta)?;
        Ok((-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * self.step * self.step))
    }

    /// Central difference for `d³E/dθ³` with its own, wider step.
    fn third(&self, theta: f64, h: f64) -> Result<f64> {
        let m2 = self.value(theta - 2.0 * h)?;
        let m1 = self.value(theta - h)?;
        let p1 = self.value(theta + h)?;
        let p2 = self.value(theta + 2.0 * h)?;
        Ok((-m2 + 2.0 * m1 - 2.0 * p1 + p2) / (2.0 * h * h * h))
    }

    /// Bisects a sign change of `f` on `[lo, hi]`.
    fn bisect(&self, f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
        let mut f_lo = f(lo)?;
        if f_lo == 0.0 {
            return Ok(lo);
        }
        for _ in 0..200 {
            if hi - lo <= BISECTION_WIDTH {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let f_mid = f(mid)?;
            if f_mid == 0.0 {
                return Ok(mid);
            }
            if (f_mid < 0.0) == (f_lo < 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

fn sign_change(a: f64, b: f64) -> bool {
    (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)
}

/// Re-locates a flat sign change of `dE/dθ` as a zero of `d³E/dθ³` within one
/// grid spacing, when the second derivative there is negligible.
fn refine_degenerate(ang: &AngularEnergy<'_>, root: f64, spacing: f64, scale: f64) -> Result<f64> {
    if ang.second(root)?.abs() > DEGENERATE_CURVATURE * scale {
        return Ok(root);
    }
    let h = spacing;
    let (a, b) = (root - spacing, root + spacing);
    if !sign_change(ang.third(a, h)?, ang.third(b, h)?) {
        return Ok(root);
    }
    let refined = ang.bisect(|s| ang.third(s, h), a, b)?;
    // keep the refinement only if the first derivative still vanishes there
    if ang.first(refined)?.abs() <= DERIVATIVE_TOLERANCE * scale {
        Ok(refined)
    } else {
        Ok(root)
    }
}

/// Locates and classifies the critical points of `E_X` on the planar indicatrix.
///
/// `dE/dθ` is sampled on `n_angles` grid points with a central-difference
/// step of `2π / (8 n_angles)`. Sign changes are bisected. Grid points where
/// `|dE/dθ|` has a local minimum without a neighbouring sign change are
/// refined on `d²E/dθ²` and kept when the first derivative vanishes there.
/// Points closer than [`MERGE_DISTANCE`] are merged and each point is
/// classified from the sign of `dE/dθ` half a grid spacing to either side.
///
/// A constant profile (the Riemannian case) is reported as
/// [`Error::ConstantProfile`].
pub fn find_critical_points(norm: &MinkowskiNorm, x: &[f64], n_angles: usize) -> Result<Vec<CriticalPoint>> {
    check_planar(norm, x)?;
    if n_angles < 64 {
        return Err(Error::InvalidArgument(format!("n_angles = {n_angles} is below 64")));
    }
    let spacing = TAU / n_angles as f64;
    let ang = AngularEnergy { norm, x, step: spacing / 8.0 };
    let grid: Vec<(f64, f64)> = (0..n_angles)
        .into_par_iter()
        .map(|k| {
            let t = spacing * k as f64;
            Ok((ang.value(t)?, ang.first(t)?))
        })
        .collect::<Result<_>>()?;

    let (lo, hi, sum) =
        grid.iter().fold((f64::INFINITY, f64::NEG_INFINITY, 0.0), |(lo, hi, s), &(e, _)| (lo.min(e), hi.max(e), s + e));
    let mean = sum / n_angles as f64;
    if hi - lo <= CONSTANT_PROFILE_SPREAD * mean.abs() {
        return Err(Error::ConstantProfile { spread: hi - lo, mean });
    }
    let tol = DERIVATIVE_TOLERANCE * hi.abs().max(lo.abs()).max(1.0);

    let d = |k: usize| grid[k % n_angles].1;
    let mut candidates: Vec<f64> = Vec::new();
    for k in 0..n_angles {
        let t = spacing * k as f64;
        let (dk, dn) = (d(k), d(k + 1));
        if dk == 0.0 {
            candidates.push(t);
        } else if sign_change(dk, dn) {
            let root = ang.bisect(|s| ang.first(s), t, t + spacing)?;
            candidates.push(refine_degenerate(&ang, root, spacing, tol / DERIVATIVE_TOLERANCE)?);
        }
    }
    for k in 0..n_angles {
        let (prev, cur, next) = (d(k + n_angles - 1), d(k), d(k + 1));
        let flat = cur.abs() <= prev.abs() && cur.abs() <= next.abs();
        if !flat || cur == 0.0 || sign_change(prev, cur) || sign_change(cur, next) {
            continue;
        }
        let t = spacing * k as f64;
        let (a, b) = (t - spacing, t + spacing);
        if !sign_change(ang.second(a)?, ang.second(b)?) {
            continue;
        }
        let s = ang.bisect(|s| ang.second(s), a, b)?;
        if ang.first(s)?.abs() <= tol {
            candidates.push(s);
        }
    }

    let mut thetas: Vec<f64> = candidates.into_iter().map(wrap_angle).collect();
    thetas.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::with_capacity(thetas.len());
    for t in thetas {
        match merged.last() {
            Some(&last) if t - last < MERGE_DISTANCE => {}
            _ => merged.push(t),
        }
    }
    if merged.len() > 1 && angle_distance(merged[0], *merged.last().unwrap()) < MERGE_DISTANCE {
        merged.pop();
    }
    if merged.is_empty() {
        return Err(Error::NoCriticalPoints(n_angles));
    }

    let metric = norm.as_mth_root();
    merged
        .into_iter()
        .map(|theta| {
            let before = ang.first(theta - 0.5 * spacing)?;
            let after = ang.first(theta + 0.5 * spacing)?;
            let kind = match (before < 0.0, after < 0.0) {
                (true, false) if after > 0.0 => CriticalKind::LocalMin,
                (false, true) if before > 0.0 => CriticalKind::LocalMax,
                _ => CriticalKind::Inflection,
            };
            let y = norm.indicatrix_point(theta)?;
            let lagrange_residual = metric.map(|m| lagrange_residual_normalized(m, x, &y)).transpose()?;
            Ok(CriticalPoint {
                theta,
                y: y.to_vec(),
                energy: relative_energy(norm, x, &y)?,
                kind,
                derivative_residual: ang.first(theta)?.abs(),
                lagrange_residual,
            })
        })
        .collect()
}

/// Pieces of the constrained problem for an m-th-root metric in the plane.
///
/// With `P = F^m`, the relative energy factors as
/// `E_X = Ẽ_X / (4 P^(2 − 2/m))` where
/// `Ẽ_X = (2/m)·(P·XᵀH_P X + (2/m − 1)(∇P·X)²)` is a homogeneous polynomial
/// of degree `2m − 2`. The denominator is constant on the indicatrix, so the
/// critical points are where `∇Ẽ_X` and `∇P` are parallel.
struct EnergyNumerator {
    p: Polynomial,
    grad_p: Vec<Polynomial>,
    /// `XᵀH_P X`
    q: Polynomial,
    grad_q: Vec<Polynomial>,
    /// `∇P·X`
    l: Polynomial,
    grad_l: Vec<Polynomial>,
    scale: f64,
    mix: f64,
}

impl EnergyNumerator {
    fn new(metric: &MthRootMetric, x: &[f64]) -> Self {
        let p = metric.polynomial().clone();
        let l = p.directional(x);
        let q = l.directional(x);
        let two_over_m = 2.0 / f64::from(metric.degree());
        Self {
            grad_p: p.gradient(),
            grad_q: q.gradient(),
            grad_l: l.gradient(),
            p,
            q,
            l,
            scale: two_over_m,
            mix: two_over_m - 1.0,
        }
    }

    fn value(&self, y: &[f64]) -> f64 {
        let l = self.l.eval(y);
        self.scale * (self.p.eval(y) * self.q.eval(y) + self.mix * l * l)
    }

    fn gradient(&self, y: &[f64]) -> Vec<f64> {
        let (p, q, l) = (self.p.eval(y), self.q.eval(y), self.l.eval(y));
        (0..y.len())
            .map(|k| {
                self.scale
                    * (self.grad_p[k].eval(y) * q
                        + p * self.grad_q[k].eval(y)
                        + 2.0 * self.mix * l * self.grad_l[k].eval(y))
            })
            .collect()
    }
}

/// `E_X(y)` from the polynomial factorization, without any differentiation
/// engine. Agrees with [`relative_energy`] wherever `P(y) > 0`.
pub fn polynomial_energy(metric: &MthRootMetric, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != metric.dimension() || y.len() != metric.dimension() {
        return Err(Error::DimensionMismatch { expected: metric.dimension(), found: y.len().min(x.len()) });
    }
    require_nonzero(y)?;
    let num = EnergyNumerator::new(metric, x);
    let p = num.p.eval(y);
    if p <= 0.0 {
        return Err(Error::NonPositiveArgument { value: p, at: y.to_vec() });
    }
    let m = f64::from(metric.degree());
    Ok(num.value(y) / (4.0 * p.powf(2.0 - 2.0 / m)))
}

fn planar_gradients(metric: &MthRootMetric, x: &[f64], y: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if metric.dimension() != 2 {
        return Err(Error::NotPlanar(metric.dimension()));
    }
    if x.len() != 2 || y.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: if x.len() != 2 { x.len() } else { y.len() } });
    }
    require_nonzero(y)?;
    let num = EnergyNumerator::new(metric, x);
    let grad_p: Vec<f64> = num.grad_p.iter().map(|g| g.eval(y)).collect();
    Ok((num.gradient(y), grad_p))
}

/// `∂₁Ẽ_X·∂₂P − ∂₂Ẽ_X·∂₁P`, zero exactly at the critical points of `E_X` on
/// the indicatrix.
pub fn lagrange_residual(metric: &MthRootMetric, x: &[f64], y: &[f64]) -> Result<f64> {
    let (ge, gp) = planar_gradients(metric, x, y)?;
    Ok((ge[0] * gp[1] - ge[1] * gp[0]).abs())
}

/// [`lagrange_residual`] divided by `|∇Ẽ_X|·|∇P|`: the sine of the angle
/// between the two gradients, independent of the scale of `y` and `X`.
pub fn lagrange_residual_normalized(metric: &MthRootMetric, x: &[f64], y: &[f64]) -> Result<f64> {
    let (ge, gp) = planar_gradients(metric, x, y)?;
    let denom = ge[0].hypot(ge[1]) * gp[0].hypot(gp[1]);
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok((ge[0] * gp[1] - ge[1] * gp[0]).abs() / denom)
}

/// The factored critical-point condition of the `c = 3` quartic metric,
/// `y₁y₂(y₁−y₂)(y₁+y₂)(y₁²+y₂²)(X₁y₂−X₂y₁)²`.
pub fn crit_condition_residual(x: [f64; 2], y: [f64; 2]) -> f64 {
    crate::closed_form::crit_condition(x, y)
}

/// Angles in `[0, 2π)` of the positive and negative multiples of `x`.
pub fn multiples_of(x: [f64; 2]) -> [f64; 2] {
    let t = wrap_angle(x[1].atan2(x[0]));
    let mut pair = [t, wrap_angle(t + PI)];
    pair.sort_by(f64::total_cmp);
    pair
}
