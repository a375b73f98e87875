//! Minkowski norms: positively 1-homogeneous norms on ℝⁿ.
//!
//! The main concrete family is the m-th-root metric `F(y) = P(y)^(1/m)` for
//! a homogeneous polynomial `P` of even degree `m`. Riemannian norms are the
//! `m = 2` case (`P(y) = yᵀ A y`). Anything else can be plugged in through
//! [`CustomNorm`].

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dual::{HyperDual, Real};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Term};

/// Number of angles used when checking that a planar polynomial is positive.
const POSITIVITY_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    MthRootPolynomial,
    Riemannian,
    Custom,
}

/// A user-supplied norm. Both methods must evaluate the same function `F`;
/// the hyper-dual one is what the differentiation engine runs.
pub trait CustomNorm: Send + Sync + fmt::Debug {
    fn eval(&self, y: &[f64]) -> f64;
    fn eval_hyper(&self, y: &[HyperDual]) -> HyperDual;
}

/// `F(y) = P(y)^(1/m)` with `P` homogeneous of even degree `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MthRootMetric {
    m: u32,
    poly: Polynomial,
}

impl MthRootMetric {
    pub fn new(m: u32, poly: Polynomial) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(2) {
            return Err(Error::InvalidMetric(format!("degree m = {m} must be a positive even integer")));
        }
        if poly.nvars() == 0 {
            return Err(Error::InvalidMetric("dimension must be positive".into()));
        }
        if poly.is_zero() {
            return Err(Error::InvalidMetric("polynomial has no nonzero terms".into()));
        }
        if let Some(t) = poly.terms().iter().find(|t| t.degree() != m) {
            return Err(Error::InvalidMetric(format!(
                "monomial {:?} has degree {}, expected {m}",
                t.powers,
                t.degree()
            )));
        }
        if let Some(t) = poly.terms().iter().find(|t| !t.coeff.is_finite()) {
            return Err(Error::InvalidMetric(format!("coefficient of {:?} is not finite", t.powers)));
        }
        Ok(Self { m, poly })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.poly.nvars()
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// `Some(c)` when this is `(y₁⁴ + c·y₁²y₂² + y₂⁴)^(1/4)`.
    pub fn quartic_parameter(&self) -> Option<f64> {
        if self.m != 4 || self.dimension() != 2 {
            return None;
        }
        let mut c = 0.0;
        let (mut a, mut b) = (false, false);
        for t in self.poly.terms() {
            match (t.powers[0], t.powers[1], t.coeff) {
                (4, 0, 1.0) => a = true,
                (0, 4, 1.0) => b = true,
                (2, 2, v) => c = v,
                _ => return None,
            }
        }
        (a && b).then_some(c)
    }

    /// `P(y)`, the m-th power of the norm.
    pub fn power<T: Real>(&self, y: &[T]) -> T {
        self.poly.eval(y)
    }

    /// Checks `P > 0` on a uniform angular sample of the unit circle.
    pub fn check_planar_positivity(&self, n_angles: usize) -> Result<()> {
        if self.dimension() != 2 {
            return Err(Error::NotPlanar(self.dimension()));
        }
        for k in 0..n_angles {
            let theta = 2.0 * PI * k as f64 / n_angles as f64;
            let y = [theta.cos(), theta.sin()];
            let p = self.power(&y);
            if p <= 0.0 || !p.is_finite() {
                return Err(Error::NonPositiveArgument { value: p, at: y.to_vec() });
            }
        }
        Ok(())
    }

    fn positive_power<T: Real>(&self, y: &[T]) -> Result<T> {
        let p = self.power(y);
        if p.value() > 0.0 && p.value().is_finite() {
            Ok(p)
        } else {
            Err(Error::NonPositiveArgument { value: p.value(), at: y.iter().map(|v| v.value()).collect() })
        }
    }

    pub fn definition(&self) -> MetricDefinition {
        MetricDefinition {
            dimension: self.dimension(),
            m: self.m,
            coeffs: self.poly.terms().iter().map(|t| CoeffEntry { powers: t.powers.clone(), value: t.coeff }).collect(),
        }
    }
}

/// JSON file form of an m-th-root metric.
///
/// ```json
/// { "dimension": 2, "m": 4,
///   "coeffs": [ { "powers": [4,0], "value": 1.0 },
///               { "powers": [2,2], "value": 3.0 },
///               { "powers": [0,4], "value": 1.0 } ] }
/// ```
///
/// Entries are written in descending lexicographic order of `powers`; any
/// order is accepted on input but repeated exponent vectors are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDefinition {
    pub dimension: usize,
    pub m: u32,
    pub coeffs: Vec<CoeffEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub powers: Vec<u32>,
    pub value: f64,
}

impl MetricDefinition {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidMetric(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_metric(&self) -> Result<MthRootMetric> {
        if self.dimension == 0 {
            return Err(Error::InvalidMetric("dimension must be positive".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for entry in &self.coeffs {
            if entry.powers.len() != self.dimension {
                return Err(Error::InvalidMetric(format!(
                    "exponent vector {:?} has length {}, expected {}",
                    entry.powers,
                    entry.powers.len(),
                    self.dimension
                )));
            }
            if !seen.insert(entry.powers.clone()) {
                return Err(Error::InvalidMetric(format!("duplicate exponent vector {:?}", entry.powers)));
            }
            let degree: u32 = entry.powers.iter().sum();
            if degree != self.m {
                return Err(Error::InvalidMetric(format!(
                    "exponent vector {:?} sums to {degree}, expected m = {}",
                    entry.powers, self.m
                )));
            }
        }
        let poly = Polynomial::new(
            self.dimension,
            self.coeffs.iter().map(|e| Term { powers: e.powers.clone(), coeff: e.value }),
        );
        MthRootMetric::new(self.m, poly)
    }

    /// Builds the norm. Planar metrics are also checked for positivity.
    pub fn to_norm(&self) -> Result<MinkowskiNorm> {
        let metric = self.to_metric()?;
        if metric.dimension() == 2 {
            metric
                .check_planar_positivity(POSITIVITY_SAMPLES)
                .map_err(|e| Error::InvalidMetric(format!("polynomial is not positive on the circle: {e}")))?;
        }
        Ok(MinkowskiNorm::from_mth_root(metric))
    }
}

#[derive(Debug, Clone)]
enum Evaluator {
    Polynomial(MthRootMetric),
    Custom(Arc<dyn CustomNorm>),
}

/// An evaluatable Minkowski norm with descriptive metadata.
///
/// Immutable after construction and cheap to clone.
#[derive(Debug, Clone)]
pub struct MinkowskiNorm {
    dimension: usize,
    family: Family,
    evaluator: Evaluator,
    description: String,
}

impl MinkowskiNorm {
    pub fn from_mth_root(metric: MthRootMetric) -> Self {
        let family = if metric.degree() == 2 { Family::Riemannian } else { Family::MthRootPolynomial };
        let description = match metric.quartic_parameter() {
            Some(c) => format!("quartic c={c}"),
            None => format!("{}th-root polynomial in {} variables", metric.degree(), metric.dimension()),
        };
        Self { dimension: metric.dimension(), family, evaluator: Evaluator::Polynomial(metric), description }
    }

    pub fn custom(dimension: usize, norm: Arc<dyn CustomNorm>, description: impl Into<String>) -> Self {
        Self { dimension, family: Family::Custom, evaluator: Evaluator::Custom(norm), description: description.into() }
    }

    /// `F_c(y) = (y₁⁴ + c·y₁²y₂² + y₂⁴)^(1/4)`. Positivity is not checked here;
    /// for `c ≤ -2` evaluation fails in the diagonal directions.
    pub fn quartic_family(c: f64) -> Self {
        let poly = Polynomial::new(
            2,
            [
                Term { powers: vec![4, 0], coeff: 1.0 },
                Term { powers: vec![2, 2], coeff: c },
                Term { powers: vec![0, 4], coeff: 1.0 },
            ],
        );
        // c = 0 drops the cross term, which quartic_parameter still recognizes.
        let metric = MthRootMetric::new(4, poly).expect("quartic terms have degree 4");
        Self::from_mth_root(metric)
    }

    /// The counterexample metric `(y₁⁴ + 3y₁²y₂² + y₂⁴)^(1/4)`.
    pub fn paper_metric() -> Self {
        Self::quartic_family(3.0)
    }

    /// `F(y) = √(yᵀ A y)` for a symmetric matrix `A` given row-major.
    pub fn riemannian(dimension: usize, a: &[f64]) -> Result<Self> {
        if a.len() != dimension * dimension {
            return Err(Error::DimensionMismatch { expected: dimension * dimension, found: a.len() });
        }
        let mut terms = Vec::new();
        for i in 0..dimension {
            for j in i..dimension {
                if a[i * dimension + j] != a[j * dimension + i] {
                    return Err(Error::InvalidMetric(format!("matrix is not symmetric at ({i}, {j})")));
                }
                let mut powers = vec![0; dimension];
                powers[i] += 1;
                powers[j] += 1;
                let coeff = if i == j { a[i * dimension + i] } else { 2.0 * a[i * dimension + j] };
                terms.push(Term { powers, coeff });
            }
        }
        let metric = MthRootMetric::new(2, Polynomial::new(dimension, terms))?;
        let mut norm = Self::from_mth_root(metric);
        norm.description = format!("riemannian in {dimension} variables");
        Ok(norm)
    }

    pub fn euclidean(dimension: usize) -> Self {
        let mut a = vec![0.0; dimension * dimension];
        for i in 0..dimension {
            a[i * dimension + i] = 1.0;
        }
        let mut norm = Self::riemannian(dimension, &a).expect("identity is a valid quadratic form");
        norm.description = format!("euclidean in {dimension} variables");
        norm
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn as_mth_root(&self) -> Option<&MthRootMetric> {
        match &self.evaluator {
            Evaluator::Polynomial(m) => Some(m),
            Evaluator::Custom(_) => None,
        }
    }

    /// The JSON definition, when the norm is polynomial.
    pub fn definition(&self) -> Option<MetricDefinition> {
        self.as_mth_root().map(MthRootMetric::definition)
    }

    pub(crate) fn check_dimension(&self, len: usize) -> Result<()> {
        if len == self.dimension {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dimension, found: len })
        }
    }

    /// `F(y)`. The zero vector maps to 0.
    pub fn eval(&self, y: &[f64]) -> Result<f64> {
        self.check_dimension(y.len())?;
        if y.iter().all(|&v| v == 0.0) {
            return Ok(0.0);
        }
        match &self.evaluator {
            Evaluator::Polynomial(m) => {
                let p = m.positive_power(y)?;
                Ok(p.powf(1.0 / f64::from(m.degree())))
            }
            Evaluator::Custom(c) => Ok(c.eval(y)),
        }
    }

    /// `F²` on hyper-dual inputs. Requires `y ≠ 0`.
    pub(crate) fn norm_squared_hyper(&self, y: &[HyperDual]) -> Result<HyperDual> {
        match &self.evaluator {
            Evaluator::Polynomial(m) => {
                let p = m.positive_power(y)?;
                Ok(p.powf(2.0 / f64::from(m.degree())))
            }
            Evaluator::Custom(c) => {
                let f = c.eval_hyper(y);
                Ok(f * f)
            }
        }
    }

    /// Distance from the origin to the indicatrix along angle `theta`:
    /// `1 / F(cos θ, sin θ)`.
    pub fn indicatrix_radius(&self, theta: f64) -> Result<f64> {
        if self.dimension != 2 {
            return Err(Error::NotPlanar(self.dimension));
        }
        Ok(1.0 / self.eval(&[theta.cos(), theta.sin()])?)
    }

    /// The indicatrix point `r(θ)·(cos θ, sin θ)`.
    pub fn indicatrix_point(&self, theta: f64) -> Result<[f64; 2]> {
        let r = self.indicatrix_radius(theta)?;
        Ok([r * theta.cos(), r * theta.sin()])
    }

    /// `y / F(y)` for nonzero `y`.
    pub fn normalize(&self, y: &[f64]) -> Result<Vec<f64>> {
        let f = self.eval(y)?;
        if f == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(y.iter().map(|v| v / f).collect())
    }
}

impl fmt::Display for MinkowskiNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

pub(crate) fn require_nonzero(y: &[f64]) -> Result<()> {
    if y.iter().all(|&v| v == 0.0) {
        Err(Error::ZeroVector)
    } else if y.iter().any(|v| !v.is_finite()) {
        Err(Error::InvalidArgument(format!("vector {y:?} has non-finite entries")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const PAPER_JSON: &str = r#"{ "dimension": 2, "m": 4, "coeffs": [
        { "powers": [4,0], "value": 1.0 },
        { "powers": [2,2], "value": 3.0 },
        { "powers": [0,4], "value": 1.0 } ] }"#;

    #[test]
    fn paper_metric_values() {
        let f = MinkowskiNorm::paper_metric();
        assert_eq!(f.eval(&[1.0, 0.0]).unwrap(), 1.0);
        assert_relative_eq!(f.eval(&[1.0, 3.0]).unwrap(), 109f64.powf(0.25), max_relative = 1e-15);
        assert_relative_eq!(f.eval(&[2.0, 0.0]).unwrap(), 2.0 * f.eval(&[1.0, 0.0]).unwrap());
        assert_eq!(f.eval(&[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn quartic_family_values() {
        let f3 = MinkowskiNorm::quartic_family(3.0);
        assert_relative_eq!(f3.eval(&[1.0, 1.0]).unwrap(), 5f64.powf(0.25), max_relative = 1e-15);
        let f2 = MinkowskiNorm::quartic_family(2.0);
        assert_relative_eq!(f2.eval(&[3.0, 4.0]).unwrap(), 5.0, max_relative = 1e-15);
        let f0 = MinkowskiNorm::quartic_family(0.0);
        assert_relative_eq!(f0.eval(&[1.0, 1.0]).unwrap(), 2f64.powf(0.25), max_relative = 1e-15);
        assert_eq!(f0.as_mth_root().unwrap().quartic_parameter(), Some(0.0));
    }

    #[test]
    fn indicatrix_radius_values() {
        let f = MinkowskiNorm::paper_metric();
        assert_relative_eq!(f.indicatrix_radius(0.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(f.indicatrix_radius(PI / 4.0).unwrap(), 0.8f64.powf(0.25), max_relative = 1e-14);
        let e = MinkowskiNorm::quartic_family(2.0);
        for k in 0..16 {
            assert_relative_eq!(e.indicatrix_radius(k as f64 * 0.4).unwrap(), 1.0, max_relative = 1e-14);
        }
        assert!(matches!(MinkowskiNorm::euclidean(3).indicatrix_radius(0.0), Err(Error::NotPlanar(3))));
    }

    #[test]
    fn indicatrix_consistency_4096_angles() {
        let f = MinkowskiNorm::paper_metric();
        for k in 0..4096 {
            let y = f.indicatrix_point(2.0 * PI * k as f64 / 4096.0).unwrap();
            assert!((f.eval(&y).unwrap() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn non_positive_polynomial_is_reported() {
        let f = MinkowskiNorm::quartic_family(-3.0);
        assert!(matches!(f.eval(&[1.0, 1.0]), Err(Error::NonPositiveArgument { .. })));
        assert!(f.eval(&[1.0, 0.0]).is_ok());
    }

    #[test]
    fn json_round_trip_and_ordering() {
        let def = MetricDefinition::from_json(PAPER_JSON).unwrap();
        let norm = def.to_norm().unwrap();
        assert_eq!(norm.as_mth_root().unwrap().quartic_parameter(), Some(3.0));
        assert_eq!(norm.definition().unwrap(), def);
        // reversed input order normalizes to descending lexicographic
        let mut rev = def.clone();
        rev.coeffs.reverse();
        assert_eq!(rev.to_norm().unwrap().definition().unwrap(), def);
    }

    #[test]
    fn json_validation_errors() {
        let dup = r#"{"dimension":2,"m":4,"coeffs":[{"powers":[4,0],"value":1.0},{"powers":[4,0],"value":2.0}]}"#;
        let bad_degree = r#"{"dimension":2,"m":4,"coeffs":[{"powers":[3,0],"value":1.0}]}"#;
        let odd = r#"{"dimension":2,"m":3,"coeffs":[{"powers":[3,0],"value":1.0},{"powers":[0,3],"value":1.0}]}"#;
        let short = r#"{"dimension":2,"m":4,"coeffs":[{"powers":[4],"value":1.0}]}"#;
        let not_positive =
            r#"{"dimension":2,"m":4,"coeffs":[{"powers":[4,0],"value":1.0},{"powers":[0,4],"value":-1.0}]}"#;
        for text in [dup, bad_degree, odd, short, not_positive, "{", r#"{"dimension":2}"#] {
            let res = MetricDefinition::from_json(text).and_then(|d| d.to_norm());
            assert!(matches!(res, Err(Error::InvalidMetric(_))), "{text} -> {res:?}");
        }
    }

    #[test]
    fn riemannian_constructor() {
        let f = MinkowskiNorm::riemannian(2, &[2.0, 1.0, 1.0, 3.0]).unwrap();
        assert_eq!(f.family(), Family::Riemannian);
        // yᵀAy at (1, 2) = 2 + 4 + 12 = 18
        assert_relative_eq!(f.eval(&[1.0, 2.0]).unwrap(), 18f64.sqrt(), max_relative = 1e-15);
        assert!(MinkowskiNorm::riemannian(2, &[1.0, 0.5, 0.0, 1.0]).is_err());
        assert!(MinkowskiNorm::riemannian(2, &[1.0]).is_err());
    }

    #[test]
    fn dimension_is_checked() {
        let f = MinkowskiNorm::paper_metric();
        assert!(matches!(f.eval(&[1.0]), Err(Error::DimensionMismatch { expected: 2, found: 1 })));
    }

    proptest! {
        #[test]
        fn homogeneity(a in -10.0f64..10.0, b in -10.0f64..10.0, lambda in 1e-3f64..10.0, c in -1.5f64..8.0) {
            prop_assume!(a.abs() + b.abs() > 1e-3);
            let f = MinkowskiNorm::quartic_family(c);
            let fy = f.eval(&[a, b]).unwrap();
            let fly = f.eval(&[lambda * a, lambda * b]).unwrap();
            prop_assert!(fy > 0.0);
            prop_assert!((fly - lambda * fy).abs() <= 1e-12 * lambda * fy);
        }

        #[test]
        fn euclidean_degeneration(a in -100.0f64..100.0, b in -100.0f64..100.0) {
            let f = MinkowskiNorm::quartic_family(2.0);
            let r = a.hypot(b);
            prop_assert!((f.eval(&[a, b]).unwrap() - r).abs() <= 1e-12 * r.max(1e-300));
        }
    }
}
