//! Single-copy convertibility: Nielsen majorization and catalyst search.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{majorization_violation, majorizes, ProbabilityVector};
use crate::qstate::PureState;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvertibilityReport<T: Real> {
    /// `ψ → φ` by LOCC without help.
    pub direct: bool,
    /// A catalyst spectrum known to work; the point mass when `direct`.
    pub catalyzed: Option<ProbabilityVector<T>>,
    /// First `k` (1-based) where the sorted partial sums of `ψ` exceed those of `φ`.
    pub violated_index: Option<usize>,
}

/// Squared Schmidt coefficients across `cut`.
pub fn schmidt_spectrum<T: Real, S: AsRef<str>>(psi: &PureState<T>, cut: &[S]) -> Result<ProbabilityVector<T>> {
    ProbabilityVector::from_weights(psi.schmidt(cut)?.spectrum())
}

/// Spectrum-level Nielsen test.
pub fn convertibility<T: Real>(p: &ProbabilityVector<T>, q: &ProbabilityVector<T>) -> ConvertibilityReport<T> {
    let violated_index = majorization_violation(p, q);
    let direct = violated_index.is_none();
    ConvertibilityReport { direct, catalyzed: direct.then(ProbabilityVector::point), violated_index }
}

/// Whether `ψ` converts into `φ` by LOCC, both split by the same `cut`.
pub fn nielsen_convertible<T: Real, S: AsRef<str>>(
    psi: &PureState<T>,
    phi: &PureState<T>,
    cut: &[S],
) -> Result<ConvertibilityReport<T>> {
    Ok(convertibility(&schmidt_spectrum(psi, cut)?, &schmidt_spectrum(phi, cut)?))
}

/// `p ⊗ c ≺ q ⊗ c`.
pub fn catalyzes<T: Real>(p: &ProbabilityVector<T>, q: &ProbabilityVector<T>, catalyst: &ProbabilityVector<T>) -> bool {
    majorizes(&p.tensor(catalyst), &q.tensor(catalyst))
}

/// Whether `ψ ⊗ μ → φ ⊗ μ` is allowed for a catalyst with Schmidt spectrum `catalyst`.
pub fn check_catalyzed<T: Real, S: AsRef<str>>(
    psi: &PureState<T>,
    phi: &PureState<T>,
    cut: &[S],
    catalyst: &ProbabilityVector<T>,
) -> Result<bool> {
    Ok(catalyzes(&schmidt_spectrum(psi, cut)?, &schmidt_spectrum(phi, cut)?, catalyst))
}

/// Descending integer partitions of `total` into exactly `parts` nonnegative
/// entries, in ascending lexicographic order.
pub fn simplex_grid(parts: usize, total: usize) -> Vec<Vec<usize>> {
    fn fill(prefix: &mut Vec<usize>, remaining: usize, slots: usize, cap: usize, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // the leading entry of a descending tail must be at least its average
        let low = remaining.div_ceil(slots);
        for v in low..=cap.min(remaining) {
            prefix.push(v);
            fill(prefix, remaining - v, slots - 1, v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        fill(&mut Vec::with_capacity(parts), total, parts, total, &mut out);
    }
    out
}

/// Scans the descending simplex grid of resolution `1/grid_steps` for a
/// `catalyst_dim`-dimensional catalyst spectrum enabling `p → q`.
///
/// Directly convertible pairs return the point mass `(1, 0, …)` at once.
/// Otherwise the grid is scanned in ascending lexicographic order of its
/// integer coordinates, starting from the most uniform point, and the first
/// success is returned. Grid points are evaluated in parallel; the result is
/// the one the sequential scan would find.
pub fn search_catalyst<T: Real>(
    p: &ProbabilityVector<T>,
    q: &ProbabilityVector<T>,
    catalyst_dim: usize,
    grid_steps: usize,
) -> Result<Option<ProbabilityVector<T>>> {
    if catalyst_dim < 2 {
        return Err(Error::InvalidParameter(format!("catalyst dimension {catalyst_dim} < 2")));
    }
    if grid_steps < 2 {
        return Err(Error::InvalidParameter(format!("grid resolution {grid_steps} < 2")));
    }
    if majorizes(p, q) {
        let mut point = vec![T::zero(); catalyst_dim];
        point[0] = T::one();
        return ProbabilityVector::new(point).map(Some);
    }
    let steps = T::lit(grid_steps as f64);
    let to_spectrum = |point: &[usize]| {
        ProbabilityVector::new(point.iter().map(|&i| T::lit(i as f64) / steps).collect()).expect("grid point on simplex")
    };
    let grid = simplex_grid(catalyst_dim, grid_steps);
    let hit = grid.par_iter().position_first(|point| catalyzes(p, q, &to_spectrum(point)));
    Ok(hit.map(|i| to_spectrum(&grid[i])))
}

/// [`search_catalyst`] on the Schmidt spectra of two states.
pub fn catalyst_search<T: Real, S: AsRef<str>>(
    psi: &PureState<T>,
    phi: &PureState<T>,
    cut: &[S],
    catalyst_dim: usize,
    grid_steps: usize,
) -> Result<Option<ProbabilityVector<T>>> {
    search_catalyst(&schmidt_spectrum(psi, cut)?, &schmidt_spectrum(phi, cut)?, catalyst_dim, grid_steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::measures::shannon_entropy;

    fn pv(x: &[f64]) -> ProbabilityVector<f64> {
        ProbabilityVector::from_f64(x).unwrap()
    }

    /// Brute-force oracle: explicit outer product, sort, and partial sums.
    fn oracle_catalyzes(p: &[f64], q: &[f64], c: &[f64]) -> bool {
        let outer = |a: &[f64]| {
            let mut v: Vec<f64> = a.iter().flat_map(|x| c.iter().map(move |y| x * y)).collect();
            v.sort_by(|a, b| b.partial_cmp(a).unwrap());
            v
        };
        let (mut a, mut b) = (outer(p), outer(q));
        let n = a.len().max(b.len());
        a.resize(n, 0.0);
        b.resize(n, 0.0);
        let (mut sa, mut sb) = (0.0, 0.0);
        a.iter().zip(&b).all(|(x, y)| {
            sa += x;
            sb += y;
            sa <= sb + 1e-10
        })
    }

    #[test]
    fn bell_converts_to_any_qubit_pair_state() {
        let bell = builtin::bell::<f64>();
        let target = builtin::from_spectrum::<f64>(&[0.9, 0.1], 2).unwrap();
        let report = nielsen_convertible(&bell, &target, &["A"]).unwrap();
        assert!(report.direct);
        assert_eq!(report.violated_index, None);
        assert_eq!(report.catalyzed, Some(ProbabilityVector::point()));
    }

    #[test]
    fn jonathan_plenio_pair_needs_help() {
        let report = nielsen_convertible(&builtin::jp_psi::<f64>(), &builtin::jp_phi(), &["A"]).unwrap();
        assert!(!report.direct);
        assert_eq!(report.violated_index, Some(2));
        assert_eq!(report.catalyzed, None);
    }

    #[test]
    fn state_converts_to_itself() {
        let psi = builtin::jp_psi::<f64>();
        assert!(nielsen_convertible(&psi, &psi, &["A"]).unwrap().direct);
    }

    #[test]
    fn catalyzed_examples_match_oracle() {
        let (p, q) = (builtin::JP_PSI_SPECTRUM, builtin::JP_PHI_SPECTRUM);
        assert!(oracle_catalyzes(&p, &q, &[0.6, 0.4]));
        assert!(!oracle_catalyzes(&p, &q, &[0.5, 0.5]));
        let psi = builtin::jp_psi::<f64>();
        let phi = builtin::jp_phi::<f64>();
        assert!(check_catalyzed(&psi, &phi, &["A"], &pv(&[0.6, 0.4])).unwrap());
        assert!(!check_catalyzed(&psi, &phi, &["A"], &pv(&[0.5, 0.5])).unwrap());
        // one-dimensional catalyst is plain Nielsen
        assert!(!check_catalyzed(&psi, &phi, &["A"], &ProbabilityVector::point()).unwrap());
    }

    #[test]
    fn grid_is_sorted_and_complete() {
        let grid = simplex_grid(3, 6);
        assert_eq!(grid, vec![vec![2, 2, 2], vec![3, 2, 1], vec![3, 3, 0], vec![4, 1, 1], vec![4, 2, 0], vec![5, 1, 0], vec![6, 0, 0]]);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn search_returns_point_mass_for_direct_pairs() {
        let found = search_catalyst(&pv(&[0.5, 0.5]), &pv(&[0.9, 0.1]), 3, 10).unwrap().unwrap();
        assert_eq!(found.entries(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn search_finds_jonathan_plenio_catalyst() {
        let p = pv(&builtin::JP_PSI_SPECTRUM);
        let q = pv(&builtin::JP_PHI_SPECTRUM);
        // exhaustive oracle over the same grid
        let oracle: Vec<f64> = (50..=100)
            .map(|i| i as f64 / 100.0)
            .filter(|&a| oracle_catalyzes(&builtin::JP_PSI_SPECTRUM, &builtin::JP_PHI_SPECTRUM, &[a, 1.0 - a]))
            .collect();
        assert_eq!(oracle.first().copied(), Some(0.6));
        let found = search_catalyst(&p, &q, 2, 100).unwrap().unwrap();
        assert!(found.sup_distance(&pv(&[0.6, 0.4])) <= 0.01);
        assert!(catalyzes(&p, &q, &found));
    }

    #[test]
    fn search_respects_entropy_obstruction() {
        // E(ψ) < E(φ): no catalyst can exist
        let p = pv(&[0.7, 0.2, 0.1]);
        let q = pv(&[0.4, 0.3, 0.3]);
        assert!(shannon_entropy(p.entries()) < shannon_entropy(q.entries()));
        for dim in 2..=4 {
            assert_eq!(search_catalyst(&p, &q, dim, 20).unwrap(), None);
        }
    }

    #[test]
    fn search_validates_parameters() {
        let p = pv(&[1.0]);
        assert!(search_catalyst(&p, &p, 1, 10).is_err());
        assert!(search_catalyst(&p, &p, 2, 1).is_err());
    }

    #[test]
    fn parallel_search_matches_sequential_scan() {
        let p = pv(&builtin::JP_PSI_SPECTRUM);
        let q = pv(&builtin::JP_PHI_SPECTRUM);
        let grid = simplex_grid(3, 30);
        let sequential = grid
            .iter()
            .map(|g| pv(&g.iter().map(|&i| i as f64 / 30.0).collect::<Vec<_>>()))
            .find(|c| catalyzes(&p, &q, c));
        assert_eq!(search_catalyst(&p, &q, 3, 30).unwrap(), sequential);
    }
}
