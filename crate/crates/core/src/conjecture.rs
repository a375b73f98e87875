//! Deciding whether the relative energy `E_X` is minimized at `X / F(X)`.
//!
//! The global minimum is taken over the sampled profile, the refined critical
//! points and the self point `X / F(X)` itself. When it lies below `½F²(X)` by
//! more than [`REFUTATION_THRESHOLD`]` · max(1, ½F²(X))` the conjecture is
//! refuted for that `(F, X)` and a self-contained certificate is produced.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::{
    self, angle_distance, energy_profile, find_critical_points, polynomial_energy, wrap_angle, CriticalPoint,
};
use crate::error::{Error, Result};
use crate::norms::{require_nonzero, MetricDefinition, MinkowskiNorm};
use crate::tensor::check_strong_convexity;

pub const REFUTATION_THRESHOLD: f64 = 1e-8;

/// Allowed deviation of a certificate witness from the indicatrix.
pub const WITNESS_NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No direction beat the self point on the sampled indicatrix. Not a proof.
    HoldsNumerically,
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Location {
    pub theta: f64,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub metric_id: String,
    pub x: Vec<f64>,
    pub n_angles: usize,
    pub self_energy: f64,
    pub global_min: f64,
    pub global_min_location: Location,
    pub verdict: Verdict,
    pub margin: f64,
    pub convexity_pass: bool,
    /// Empty when the profile is constant.
    pub critical_points: Vec<CriticalPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CounterexampleCertificate>,
}

impl ConjectureReport {
    pub fn is_refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }

    /// Errors with [`Error::InvalidMetric`] if the metric failed the convexity scan.
    pub fn require_convex(&self) -> Result<&Self> {
        if self.convexity_pass {
            Ok(self)
        } else {
            Err(Error::InvalidMetric(format!("{} is not strongly convex", self.metric_id)))
        }
    }
}

fn refutation_threshold(self_energy: f64) -> f64 {
    REFUTATION_THRESHOLD * self_energy.abs().max(1.0)
}

/// Runs the convexity scan, the energy profile and the critical-point search
/// for `(norm, x)` and compares the global minimum of `E_X` with `½F²(X)`.
///
/// A metric that fails the convexity scan still gets a report, with
/// `convexity_pass = false`.
pub fn test_conjecture(norm: &MinkowskiNorm, x: &[f64], n_angles: usize) -> Result<ConjectureReport> {
    if norm.dimension() != 2 {
        return Err(Error::NotPlanar(norm.dimension()));
    }
    norm.check_dimension(x.len())?;
    require_nonzero(x)?;

    let convexity = check_strong_convexity(norm, n_angles.max(64))?;
    let profile = energy_profile(norm, x, n_angles)?;
    let critical_points = match find_critical_points(norm, x, n_angles) {
        Ok(points) => points,
        Err(Error::ConstantProfile { .. }) => Vec::new(),
        Err(e) => return Err(e),
    };

    let fx = norm.eval(x)?;
    let self_energy = 0.5 * fx * fx;
    let self_theta = wrap_angle(x[1].atan2(x[0]));

    let mut candidates: Vec<(f64, f64)> = profile.angles.iter().copied().zip(profile.values.iter().copied()).collect();
    candidates.extend(critical_points.iter().map(|p| (p.theta, p.energy)));
    candidates.push((self_theta, self_energy));

    let global_min = candidates.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let tie = 1e-12 * global_min.abs().max(1.0);
    let theta = candidates.iter().filter(|c| c.1 <= global_min + tie).map(|c| c.0).fold(f64::INFINITY, f64::min);
    let y = norm.indicatrix_point(theta)?.to_vec();

    let margin = self_energy - global_min;
    let verdict = if margin > refutation_threshold(self_energy) { Verdict::Refuted } else { Verdict::HoldsNumerically };

    let certificate = match (verdict, norm.definition()) {
        (Verdict::Refuted, Some(metric)) => Some(CounterexampleCertificate {
            metric,
            x: x.to_vec(),
            witness: y.clone(),
            witness_theta: theta,
            witness_energy: global_min,
            self_energy,
            margin,
        }),
        _ => None,
    };

    Ok(ConjectureReport {
        metric_id: norm.description().to_owned(),
        x: x.to_vec(),
        n_angles,
        self_energy,
        global_min,
        global_min_location: Location { theta, y },
        verdict,
        margin,
        convexity_pass: convexity.pass,
        critical_points,
        certificate,
    })
}

/// Everything a third party needs to re-check a refutation: the metric, `X`
/// and a witness `y*` on the indicatrix with `E_X(y*) < ½F²(X)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleCertificate {
    pub metric: MetricDefinition,
    pub x: Vec<f64>,
    pub witness: Vec<f64>,
    pub witness_theta: f64,
    pub witness_energy: f64,
    pub self_energy: f64,
    pub margin: f64,
}

/// Values recomputed from a certificate alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub witness_norm: f64,
    pub witness_energy: f64,
    pub self_energy: f64,
    pub margin: f64,
    pub on_indicatrix: bool,
    pub margin_exceeds_threshold: bool,
    /// The recomputed energies match the recorded ones to relative 1e-9.
    pub matches_recorded: bool,
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        self.on_indicatrix && self.margin_exceeds_threshold && self.matches_recorded
    }
}

impl CounterexampleCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Recomputes the certificate from its metric definition.
    ///
    /// The norm is evaluated straight from the polynomial and the energy from
    /// its closed-form factorization, so nothing here goes through the
    /// differentiation engine that produced the certificate.
    pub fn verify(&self) -> Result<CertificateCheck> {
        let metric = self.metric.to_metric()?;
        let m = f64::from(metric.degree());
        let p_witness = metric.power(&self.witness);
        let p_x = metric.power(&self.x);
        if p_witness <= 0.0 || p_x <= 0.0 {
            return Err(Error::NonPositiveArgument { value: p_witness.min(p_x), at: self.witness.clone() });
        }
        let witness_norm = p_witness.powf(1.0 / m);
        let self_energy = 0.5 * p_x.powf(2.0 / m);
        let witness_energy = polynomial_energy(&metric, &self.x, &self.witness)?;
        let margin = self_energy - witness_energy;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-300);
        Ok(CertificateCheck {
            witness_norm,
            witness_energy,
            self_energy,
            margin,
            on_indicatrix: (witness_norm - 1.0).abs() <= WITNESS_NORM_TOLERANCE,
            margin_exceeds_threshold: margin > refutation_threshold(self_energy),
            matches_recorded: close(witness_energy, self.witness_energy) && close(self_energy, self.self_energy),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub x: Vec<f64>,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorSweep {
    pub metric_id: String,
    pub n_dirs: usize,
    pub refuted: usize,
    pub reports: Vec<ConjectureReport>,
    pub failures: Vec<SweepFailure>,
}

/// `n_dirs` unit vectors at angles `2πk / n_dirs`.
pub fn sweep_directions(n_dirs: usize) -> Vec<[f64; 2]> {
    (0..n_dirs)
        .map(|k| {
            let t = TAU * k as f64 / n_dirs as f64;
            [t.cos(), t.sin()]
        })
        .collect()
}

/// Tests the conjecture for `n_dirs` uniformly spaced unit vectors `X`.
pub fn sweep_vectors(norm: &MinkowskiNorm, n_dirs: usize, n_angles: usize) -> Result<VectorSweep> {
    if n_dirs < 4 {
        return Err(Error::InvalidArgument(format!("n_dirs = {n_dirs} is below 4")));
    }
    let results: Vec<_> =
        sweep_directions(n_dirs).into_par_iter().map(|x| (x, test_conjecture(norm, &x, n_angles))).collect();
    let mut sweep = VectorSweep {
        metric_id: norm.description().to_owned(),
        n_dirs,
        refuted: 0,
        reports: Vec::with_capacity(n_dirs),
        failures: Vec::new(),
    };
    for (x, result) in results {
        match result {
            Ok(report) => {
                sweep.refuted += usize::from(report.is_refuted());
                sweep.reports.push(report);
            }
            Err(e) => sweep.failures.push(SweepFailure { x: x.to_vec(), error: e.to_string() }),
        }
    }
    Ok(sweep)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub c: f64,
    pub convexity_pass: bool,
    pub min_eigenvalue: Option<f64>,
    pub evaluated: usize,
    pub refuted: usize,
    pub refutation_fraction: f64,
    /// Critical angles in `[0, π)` shared by every tested `X`.
    pub common_critical_angles: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySweepSummary {
    pub n_dirs: usize,
    pub n_angles: usize,
    pub entries: Vec<FamilyEntry>,
}

impl FamilySweepSummary {
    pub fn entry(&self, c: f64) -> Option<&FamilyEntry> {
        self.entries.iter().find(|e| e.c == c)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn common_critical_angles(reports: &[ConjectureReport]) -> Vec<f64> {
    const SAME: f64 = 1e-6;
    let half_turn = |t: f64| {
        let r = t.rem_euclid(PI);
        if PI - r < SAME {
            0.0
        } else {
            r
        }
    };
    let Some(first) = reports.first() else { return Vec::new() };
    let mut angles: Vec<f64> = first.critical_points.iter().map(|p| half_turn(p.theta)).collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < SAME);
    angles.retain(|&a| {
        reports[1..]
            .iter()
            .all(|r| r.critical_points.iter().any(|p| angle_distance(2.0 * half_turn(p.theta), 2.0 * a) < 2.0 * SAME))
    });
    angles
}

/// Convexity and refutation statistics across the quartic family
/// `(y₁⁴ + c·y₁²y₂² + y₂⁴)^(1/4)`.
pub fn sweep_family(c_values: &[f64], n_dirs: usize, n_angles: usize) -> Result<FamilySweepSummary> {
    if c_values.is_empty() {
        return Err(Error::InvalidArgument("no c values given".into()));
    }
    if n_dirs < 4 {
        return Err(Error::InvalidArgument(format!("n_dirs = {n_dirs} is below 4")));
    }
    let entries = c_values
        .par_iter()
        .map(|&c| {
            let norm = MinkowskiNorm::quartic_family(c);
            let mut entry = FamilyEntry {
                c,
                convexity_pass: false,
                min_eigenvalue: None,
                evaluated: 0,
                refuted: 0,
                refutation_fraction: 0.0,
                common_critical_angles: Vec::new(),
                error: None,
            };
            let outcome = check_strong_convexity(&norm, n_angles.max(64)).and_then(|conv| {
                entry.convexity_pass = conv.pass;
                entry.min_eigenvalue = Some(conv.min_eigenvalue);
                sweep_vectors(&norm, n_dirs, n_angles)
            });
            match outcome {
                Ok(sweep) => {
                    entry.evaluated = sweep.reports.len();
                    entry.refuted = sweep.refuted;
                    if entry.evaluated > 0 {
                        entry.refutation_fraction = sweep.refuted as f64 / entry.evaluated as f64;
                    }
                    entry.common_critical_angles = common_critical_angles(&sweep.reports);
                    if let Some(f) = sweep.failures.first() {
                        entry.error =
                            Some(format!("{} of {n_dirs} directions failed, first: {}", sweep.failures.len(), f.error));
                    }
                }
                Err(e) => entry.error = Some(e.to_string()),
            }
            entry
        })
        .collect();
    Ok(FamilySweepSummary { n_dirs, n_angles, entries })
}

/// Recomputes `E_X` at the witness via the tensor route, for comparison with
/// [`CounterexampleCertificate::verify`].
pub fn witness_energy_via_tensor(cert: &CounterexampleCertificate) -> Result<f64> {
    let norm = cert.metric.to_norm()?;
    energy::relative_energy(&norm, &cert.x, &cert.witness)
}
