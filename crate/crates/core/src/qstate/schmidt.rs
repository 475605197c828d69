use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Vector};
use crate::scalar::{cr, Real};

use super::layout::SystemLayout;
use super::pure::PureState;

/// `|ψ⟩ = Σ_i λ_i |u_i⟩|v_i⟩` across a bipartition.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition<T: Real> {
    /// Descending, length `min(d_left, d_right)`.
    pub coefficients: Vec<T>,
    pub left_basis: Vec<Vector<T>>,
    pub right_basis: Vec<Vector<T>>,
    pub left: SystemLayout,
    pub right: SystemLayout,
}

impl<T: Real> SchmidtDecomposition<T> {
    /// Squared coefficients, i.e. the spectrum of either reduced state.
    pub fn spectrum(&self) -> Vec<T> {
        self.coefficients.iter().map(|&l| l * l).collect()
    }

    /// Number of coefficients above `1e-12`.
    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|&&l| l > T::tol(1e-12)).count()
    }

    /// Rebuilds `Σ λ_i |u_i⟩|v_i⟩` on the layout `left ⊗ right`.
    pub fn reconstruct(&self) -> PureState<T> {
        let dl = self.left.total_dim();
        let dr = self.right.total_dim();
        let mut amps = Vector::zeros(dl * dr);
        for ((l, u), v) in self.coefficients.iter().zip(&self.left_basis).zip(&self.right_basis) {
            amps += linalg::kron_vec(u, v) * cr(*l);
        }
        let layout = self.left.concat(&self.right).expect("disjoint halves");
        PureState::from_parts_unchecked(layout, amps)
    }
}

/// Validates a cut and returns `(left, right)` label lists in layout order.
pub fn split_cut<S: AsRef<str>>(layout: &SystemLayout, cut: &[S]) -> Result<(Vec<String>, Vec<String>)> {
    if cut.is_empty() {
        return Err(Error::InvalidCut("left side is empty".into()));
    }
    let positions = layout.positions(cut).map_err(|e| Error::InvalidCut(e.to_string()))?;
    if positions.len() == layout.len() {
        return Err(Error::InvalidCut("right side is empty".into()));
    }
    let mut left_positions = positions;
    left_positions.sort_unstable();
    let left: Vec<String> = left_positions.iter().map(|&p| layout.subsystems()[p].label.clone()).collect();
    let right = layout.complement(&left)?;
    Ok((left, right))
}

impl<T: Real> PureState<T> {
    /// Schmidt decomposition with `cut` on the left. Coefficients are sorted
    /// descending; ties are ordered by the position of the first nonzero
    /// component of the left vector, whose phase is made real positive.
    pub fn schmidt<S: AsRef<str>>(&self, cut: &[S]) -> Result<SchmidtDecomposition<T>> {
        let (left, right) = split_cut(self.layout(), cut)?;
        let order: Vec<&str> = left.iter().chain(&right).map(|s| s.as_str()).collect();
        let arranged = self.reorder(&order)?;
        let left_layout = self.layout().select(&self.layout().positions(&left)?);
        let right_layout = self.layout().select(&self.layout().positions(&right)?);
        let dl = left_layout.total_dim();
        let dr = right_layout.total_dim();
        let amps = arranged.amplitudes();
        let m = Mat::from_fn(dl, dr, |a, b| amps[a * dr + b]);
        let (values, lefts, rights) = linalg::thin_svd(&m);
        let mut terms: Vec<(T, Vector<T>, Vector<T>)> = values
            .into_iter()
            .zip(lefts)
            .zip(rights)
            .map(|((s, mut left_vec), mut right_vec)| {
                let phase = linalg::fix_phase(&mut left_vec);
                // m = Σ s u v†, so the right factor in u ⊗ v̄ form is conj(v)
                right_vec = right_vec.map(|z| z.conj()) * phase;
                (s, left_vec, right_vec)
            })
            .collect();
        terms.sort_by(|a, b| b.0.as_f64().total_cmp(&a.0.as_f64()));
        // tolerance-based ties are not transitive, so order each run of
        // near-equal coefficients separately
        let tie = T::tol(1e-12);
        let mut start = 0;
        while start < terms.len() {
            let head = terms[start].0;
            let end = start + terms[start..].iter().take_while(|t| head - t.0 <= tie).count();
            terms[start..end].sort_by_key(|t| linalg::leading_index(&t.1));
            start = end;
        }

        let mut coefficients = Vec::with_capacity(terms.len());
        let mut left_basis = Vec::with_capacity(terms.len());
        let mut right_basis = Vec::with_capacity(terms.len());
        for (l, a, b) in terms {
            coefficients.push(l.max(T::zero()));
            left_basis.push(a);
            right_basis.push(b);
        }
        Ok(SchmidtDecomposition { coefficients, left_basis, right_basis, left: left_layout, right: right_layout })
    }
}
