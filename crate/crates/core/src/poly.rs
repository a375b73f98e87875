//! Sparse multivariate polynomials with real coefficients.

use crate::dual::Real;

/// A monomial `coeff · Π yᵢ^powers[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub powers: Vec<u32>,
    pub coeff: f64,
}

impl Term {
    pub fn degree(&self) -> u32 {
        self.powers.iter().sum()
    }
}

/// Polynomial in `nvars` variables. Terms are kept sorted in descending
/// lexicographic order of their exponent vectors, with no duplicates and no
/// zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<Term>,
}

impl Polynomial {
    /// Builds a polynomial, summing coefficients of repeated exponent vectors.
    ///
    /// Panics if a term's exponent vector does not have `nvars` entries.
    pub fn new(nvars: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        for t in &terms {
            assert_eq!(t.powers.len(), nvars, "exponent vector length must equal nvars");
        }
        terms.sort_by(|a, b| b.powers.cmp(&a.powers));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.powers == t.powers => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        Self { nvars, terms: merged }
    }

    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.iter().map(Term::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn eval<T: Real>(&self, y: &[T]) -> T {
        debug_assert_eq!(y.len(), self.nvars);
        let mut acc = T::constant(0.0);
        for term in &self.terms {
            let mut mono = T::constant(term.coeff);
            for (&yi, &k) in y.iter().zip(&term.powers) {
                if k > 0 {
                    mono = mono * yi.powi(k as i32);
                }
            }
            acc = acc + mono;
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|t| t.powers[var] > 0).map(|t| {
            let mut powers = t.powers.clone();
            let k = powers[var];
            powers[var] -= 1;
            Term { powers, coeff: t.coeff * f64::from(k) }
        });
        Self::new(self.nvars, terms)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Directional derivative `Σ vᵢ ∂ᵢP`.
    pub fn directional(&self, v: &[f64]) -> Self {
        debug_assert_eq!(v.len(), self.nvars);
        let terms = (0..self.nvars).filter(|&i| v[i] != 0.0).flat_map(|i| {
            self.partial(i).terms.into_iter().map(move |t| Term { powers: t.powers, coeff: t.coeff * v[i] })
        });
        Self::new(self.nvars, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(p: &[u32], c: f64) -> Term {
        Term { powers: p.to_vec(), coeff: c }
    }

    #[test]
    fn merges_and_orders_terms() {
        let p = Polynomial::new(2, [term(&[0, 4], 1.0), term(&[4, 0], 1.0), term(&[0, 4], 2.0)]);
        assert_eq!(p.terms(), &[term(&[4, 0], 1.0), term(&[0, 4], 3.0)]);
        assert_eq!(p.homogeneous_degree(), Some(4));
    }

    #[test]
    fn partial_derivative() {
        // d/dy1 (y1^4 + 3 y1^2 y2^2 + y2^4) = 4 y1^3 + 6 y1 y2^2
        let p = Polynomial::new(2, [term(&[4, 0], 1.0), term(&[2, 2], 3.0), term(&[0, 4], 1.0)]);
        let d = p.partial(0);
        assert_eq!(d.terms(), &[term(&[3, 0], 4.0), term(&[1, 2], 6.0)]);
        assert_eq!(d.eval(&[1.0, 2.0]), 4.0 + 24.0);
        assert!(d.partial(1).partial(1).partial(1).is_zero());
    }

    #[test]
    fn directional_derivative() {
        let p = Polynomial::new(2, [term(&[2, 1], 1.0)]);
        // D_(2,3) (y1² y2) = 2·2 y1 y2 + 3 y1²
        let d = p.directional(&[2.0, 3.0]);
        assert_eq!(d.eval(&[1.0, 2.0]), 8.0 + 3.0);
    }

    #[test]
    fn mixed_degrees_are_not_homogeneous() {
        let p = Polynomial::new(1, [term(&[2], 1.0), term(&[1], 1.0)]);
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(Polynomial::zero(3).homogeneous_degree(), None);
    }
}
