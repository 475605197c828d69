use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Nonnegative entries summing to one within 1e-10.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector<T: Real> {
    entries: Vec<T>,
}

impl<T: Real> ProbabilityVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        let tol = T::tol(1e-10);
        if let Some(neg) = entries.iter().find(|&&p| p < -tol || !p.is_finite()) {
            return Err(Error::InvalidProbability(format!("entry {neg} is negative or not finite")));
        }
        let total = entries.iter().fold(T::zero(), |a, &b| a + b);
        if (total - T::one()).abs() > tol {
            return Err(Error::InvalidProbability(format!("entries sum to {total}")));
        }
        Ok(Self { entries: entries.into_iter().map(|p| p.max(T::zero())).collect() })
    }

    pub fn from_f64(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&p| T::lit(p)).collect())
    }

    /// Rescales nonnegative weights to unit sum.
    pub fn from_weights(weights: Vec<T>) -> Result<Self> {
        let total = weights.iter().fold(T::zero(), |a, &b| a + b);
        if total <= T::zero() {
            return Err(Error::InvalidProbability("weights sum to zero".into()));
        }
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    /// The point mass `(1)`.
    pub fn point() -> Self {
        Self { entries: vec![T::one()] }
    }

    pub fn uniform(d: usize) -> Self {
        Self { entries: vec![T::one() / T::lit(d as f64); d.max(1)] }
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted descending.
    pub fn sorted_desc(&self) -> Vec<T> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
        v
    }

    /// Outer product `p ⊗ q`, flattened row-major.
    pub fn tensor(&self, other: &ProbabilityVector<T>) -> Self {
        let entries = self.entries.iter().flat_map(|&p| other.entries.iter().map(move |&q| p * q)).collect();
        Self { entries }
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> T {
        shannon_entropy(&self.entries)
    }

    /// ∞-norm distance after sorting both descending and zero-padding.
    pub fn sup_distance(&self, other: &ProbabilityVector<T>) -> T {
        let (a, b) = padded_pair(&self.sorted_desc(), &other.sorted_desc());
        a.iter().zip(&b).fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()))
    }
}

/// `-Σ p log₂ p` with `0 log 0 = 0`.
pub fn shannon_entropy<T: Real>(p: &[T]) -> T {
    p.iter()
        .filter(|&&x| x > T::zero())
        .fold(T::zero(), |acc, &x| acc - x * x.log2())
}

pub(crate) fn padded_pair<T: Real>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let n = a.len().max(b.len());
    let pad = |v: &[T]| {
        let mut out = v.to_vec();
        out.resize(n, T::zero());
        out
    };
    (pad(a), pad(b))
}

/// Tolerance on partial sums when testing `p ≺ q`.
pub const MAJORIZATION_TOLERANCE: f64 = 1e-10;

/// First `k` (1-based) with `Σ_{i≤k} p↓_i > Σ_{i≤k} q↓_i + 1e-10`, if any.
pub fn majorization_violation<T: Real>(p: &ProbabilityVector<T>, q: &ProbabilityVector<T>) -> Option<usize> {
    let (a, b) = padded_pair(&p.sorted_desc(), &q.sorted_desc());
    let tol = T::tol(MAJORIZATION_TOLERANCE);
    let mut sp = T::zero();
    let mut sq = T::zero();
    for (k, (x, y)) in a.iter().zip(&b).enumerate() {
        sp += *x;
        sq += *y;
        if sp > sq + tol {
            return Some(k + 1);
        }
    }
    None
}

/// `p ≺ q`: every sorted partial sum of `q` dominates that of `p`. A pure
/// state with Schmidt spectrum `p` converts by LOCC into one with spectrum
/// `q` exactly when this holds.
pub fn majorizes<T: Real>(p: &ProbabilityVector<T>, q: &ProbabilityVector<T>) -> bool {
    majorization_violation(p, q).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(x: &[f64]) -> ProbabilityVector<f64> {
        ProbabilityVector::from_f64(x).unwrap()
    }

    #[test]
    fn uniform_is_majorized_by_everything() {
        let u = ProbabilityVector::<f64>::uniform(4);
        for q in [&[1.0][..], &[0.5, 0.5], &[0.7, 0.1, 0.1, 0.1], &[0.4, 0.3, 0.2, 0.1]] {
            assert!(majorizes(&u, &pv(q)));
        }
    }

    #[test]
    fn jonathan_plenio_pair_is_not_majorized() {
        let p = pv(&[0.4, 0.4, 0.1, 0.1]);
        let q = pv(&[0.5, 0.25, 0.25]);
        // partial sums: 0.4 ≤ 0.5, then 0.8 > 0.75
        assert!(!majorizes(&p, &q));
        assert_eq!(majorization_violation(&p, &q), Some(2));
    }

    #[test]
    fn majorization_is_reflexive() {
        let p = pv(&[0.1, 0.6, 0.3]);
        assert!(majorizes(&p, &p));
    }

    #[test]
    fn order_of_entries_is_irrelevant() {
        assert!(majorizes(&pv(&[0.25, 0.25, 0.5]), &pv(&[0.5, 0.5])));
    }

    #[test]
    fn validation() {
        assert!(ProbabilityVector::<f64>::from_f64(&[0.5, 0.6]).is_err());
        assert!(ProbabilityVector::<f64>::from_f64(&[1.1, -0.1]).is_err());
        assert!(ProbabilityVector::<f64>::from_f64(&[]).is_err());
        assert!(ProbabilityVector::<f64>::from_weights(vec![2.0, 2.0]).unwrap() == pv(&[0.5, 0.5]));
    }

    #[test]
    fn dyadic_entropy_is_exact() {
        assert_eq!(pv(&[0.5, 0.25, 0.25]).entropy(), 1.5);
        assert_eq!(pv(&[1.0, 0.0]).entropy(), 0.0);
    }

    #[test]
    fn tensor_flattens_row_major() {
        let t = pv(&[0.6, 0.4]).tensor(&pv(&[0.5, 0.5]));
        assert_eq!(t.entries(), &[0.3, 0.3, 0.2, 0.2]);
    }
}
