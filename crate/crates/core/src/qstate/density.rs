use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Vector};
use crate::scalar::{cr, modulus, Real};

use super::channel::QuantumChannel;
use super::kernel;
use super::layout::SystemLayout;
use super::pure::{check_dimension_preserving, check_unitary, full_permutation, PureState};

/// Outcomes below this probability carry no post-measurement state.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// Hermitian, positive semidefinite, unit-trace operator over a layout.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator<T: Real> {
    layout: SystemLayout,
    matrix: Mat<T>,
}

/// One outcome of a projective measurement.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome<T: Real> {
    pub probability: T,
    /// `None` when the outcome has (numerically) zero probability.
    pub post_state: Option<DensityOperator<T>>,
}

impl<T: Real> DensityOperator<T> {
    /// Validates Hermiticity (1e-10), positivity (eigenvalues ≥ -1e-10) and
    /// unit trace (1e-10).
    pub fn new(layout: SystemLayout, matrix: Mat<T>) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: matrix.nrows() });
        }
        let tol = T::tol(1e-10);
        let deviation = linalg::hermiticity_deviation(&matrix);
        if deviation > tol {
            return Err(Error::NotHermitian { deviation: deviation.as_f64() });
        }
        let trace = linalg::trace(&matrix).re;
        if (trace - T::one()).abs() > tol {
            return Err(Error::TraceNotOne { trace: trace.as_f64() });
        }
        if let Some(&min) = linalg::eigvalsh(&matrix).last() {
            if min < -tol {
                return Err(Error::NotPositive { eigenvalue: min.as_f64() });
            }
        }
        Ok(Self { layout, matrix })
    }

    pub(crate) fn from_parts_unchecked(layout: SystemLayout, matrix: Mat<T>) -> Self {
        Self { layout, matrix }
    }

    pub fn maximally_mixed(layout: SystemLayout) -> Self {
        let d = layout.total_dim();
        let matrix = linalg::identity(d) * cr(T::one() / T::lit(d as f64));
        Self { layout, matrix }
    }

    /// Diagonal state with the given probabilities.
    pub fn diagonal(layout: SystemLayout, probabilities: &[f64]) -> Result<Self> {
        let v = Vector::from_iterator(probabilities.len(), probabilities.iter().map(|&p| cr(T::lit(p))));
        Self::new(layout, Mat::from_diagonal(&v))
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> T {
        linalg::trace(&self.matrix).re
    }

    /// `Tr[ρ²]`.
    pub fn purity(&self) -> T {
        // Tr[ρ ρ] = Σ |ρ_ij|² for Hermitian ρ
        self.matrix.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Eigenvalues (descending) with round-off negatives clamped to zero.
    pub fn eigenvalues(&self) -> Vec<T> {
        let mut values = linalg::eigvalsh(&self.matrix);
        linalg::clamp_spectrum(&mut values);
        values
    }

    pub fn hermitized(&self) -> Self {
        Self { layout: self.layout.clone(), matrix: linalg::hermitize(&self.matrix) }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &DensityOperator<T>) -> Result<Self> {
        Ok(Self { layout: self.layout.concat(&other.layout)?, matrix: linalg::kron(&self.matrix, &other.matrix) })
    }

    /// `self^{⊗n}` with copy `i` (1-based) labelled by `label(original, i)`.
    /// `n = 0` gives the scalar `1` on the trivial layout.
    pub fn tensor_power(&self, n: usize, label: impl Fn(&str, usize) -> String) -> Result<Self> {
        let mut out = Self::from_parts_unchecked(SystemLayout::trivial(), linalg::identity(1));
        for i in 1..=n {
            out = out.tensor(&self.relabeled(|l| label(l, i))?)?;
        }
        Ok(out)
    }

    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        Ok(Self { layout: self.layout.map_labels(f)?, matrix: self.matrix.clone() })
    }

    /// Same matrix on a layout of identical shape.
    pub fn with_layout(&self, layout: SystemLayout) -> Result<Self> {
        if !layout.same_shape(&self.layout) {
            return Err(Error::LayoutMismatch(format!("{} vs {}", self.layout, layout)));
        }
        Ok(Self { layout, matrix: self.matrix.clone() })
    }

    /// Traces out `discard`; the remaining subsystems keep their order.
    pub fn partial_trace<S: AsRef<str>>(&self, discard: &[S]) -> Result<Self> {
        let gone = self.layout.positions(discard)?;
        if !self.layout.is_empty() && gone.len() == self.layout.len() {
            return Err(Error::EmptyRemainder);
        }
        let keep: Vec<usize> = (0..self.layout.len()).filter(|p| !gone.contains(p)).collect();
        Ok(Self { layout: self.layout.select(&keep), matrix: kernel::trace_out(&self.layout, &keep, &self.matrix) })
    }

    /// Reduced state on `keep`, in layout order.
    pub fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        let discard = self.layout.complement(keep)?;
        self.partial_trace(&discard)
    }

    /// Applies `channel` to `targets` (identity elsewhere). With no targets,
    /// the channel's own input labels are used and renamed to its output
    /// labels in the result.
    pub fn apply_channel<S: AsRef<str>>(&self, channel: &QuantumChannel<T>, targets: &[S]) -> Result<Self> {
        let (positions, rename) = if targets.is_empty() {
            (self.layout.positions(channel.input_labels())?, true)
        } else {
            (self.layout.positions(targets)?, false)
        };
        let dim: usize = positions.iter().map(|&p| self.layout.subsystems()[p].dim).product();
        if dim != channel.dim() {
            return Err(Error::DimensionMismatch { expected: channel.dim(), found: dim });
        }
        let mut out = Mat::zeros(self.dim(), self.dim());
        for k in channel.kraus() {
            out += kernel::conjugate(&self.layout, &positions, k, &self.matrix);
        }
        let mut layout = self.layout.clone();
        if rename && channel.output_labels() != channel.input_labels() {
            let pairs: Vec<(String, String)> = channel
                .input_labels()
                .iter()
                .cloned()
                .zip(channel.output_labels().iter().cloned())
                .collect();
            layout = layout.map_labels(|l| {
                pairs.iter().find(|(i, _)| i == l).map(|(_, o)| o.clone()).unwrap_or_else(|| l.to_string())
            })?;
        }
        Ok(Self { layout, matrix: linalg::hermitize(&out) })
    }

    /// `(U ⊗ I) ρ (U ⊗ I)†` with `U` acting on `targets` in the given order.
    pub fn apply_local_unitary<S: AsRef<str>>(&self, u: &Mat<T>, targets: &[S]) -> Result<Self> {
        let positions = self.layout.positions(targets)?;
        check_unitary(u, self.layout.dim_of(targets)?)?;
        Ok(Self { layout: self.layout.clone(), matrix: kernel::conjugate(&self.layout, &positions, u, &self.matrix) })
    }

    /// Rank-1 projective measurement of `target` in `basis`. Post-measurement
    /// states live on the full layout and are renormalized.
    pub fn projective_measure(&self, basis: &[Vector<T>], target: &str) -> Result<Vec<MeasurementOutcome<T>>> {
        let position = self.layout.position(target)?;
        let d = self.layout.subsystems()[position].dim;
        if basis.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: basis.len() });
        }
        let mut deviation = T::zero();
        for (i, b) in basis.iter().enumerate() {
            if b.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: b.len() });
            }
            for (j, c) in basis.iter().enumerate() {
                let expect = if i == j { T::one() } else { T::zero() };
                let dev = modulus(b.dotc(c) - cr(expect));
                if dev > deviation {
                    deviation = dev;
                }
            }
        }
        if deviation > T::tol(1e-8) {
            return Err(Error::NotOrthonormal { deviation: deviation.as_f64() });
        }
        let mut outcomes = Vec::with_capacity(d);
        for b in basis {
            let projector = linalg::outer(b, b);
            let unnormalized = kernel::conjugate(&self.layout, &[position], &projector, &self.matrix);
            let p = linalg::trace(&unnormalized).re.max(T::zero());
            let post_state = if p > T::lit(ZERO_PROBABILITY) {
                Some(Self {
                    layout: self.layout.clone(),
                    matrix: linalg::hermitize(&unnormalized) * cr(T::one() / p),
                })
            } else {
                None
            };
            outcomes.push(MeasurementOutcome { probability: p, post_state });
        }
        Ok(outcomes)
    }

    /// Moves subsystems so that the layout becomes `order`.
    pub fn reorder<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let positions = full_permutation(&self.layout, order)?;
        let map = self.layout.reorder_map(&positions);
        Ok(Self { layout: self.layout.select(&positions), matrix: kernel::reindex(&self.matrix, &map, true) })
    }

    /// Position `i` of the result holds the content previously held by
    /// `order[i]`; the layout is unchanged.
    pub fn permute_subsystems<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let moved = self.reorder(order)?;
        check_dimension_preserving(&self.layout, &moved.layout)?;
        Ok(Self { layout: self.layout.clone(), matrix: moved.matrix })
    }

    /// Convex combination `Σ w_i ρ_i` over operators sharing one layout.
    pub fn mixture(parts: &[(T, &DensityOperator<T>)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?.1;
        let mut matrix = Mat::zeros(first.dim(), first.dim());
        for (w, rho) in parts {
            if rho.layout != first.layout {
                return Err(Error::LayoutMismatch(format!("{} vs {}", first.layout, rho.layout)));
            }
            matrix += rho.matrix() * cr(*w);
        }
        Ok(Self { layout: first.layout.clone(), matrix })
    }

    /// The state vector when this operator has rank one within `1e-8` purity.
    pub fn as_pure(&self) -> Result<PureState<T>> {
        let purity = self.purity();
        if (T::one() - purity).abs() > T::tol(1e-8) {
            return Err(Error::MixedInput { purity: purity.as_f64() });
        }
        let (_, vectors) = linalg::eigh(&self.matrix);
        Ok(PureState::from_parts_unchecked(self.layout.clone(), vectors.column(0).into_owned()))
    }

    /// Largest modulus among entries `(i, j)` whose `label` indices differ,
    /// i.e. the size of the coherences in that subsystem's basis.
    pub fn off_block_magnitude(&self, label: &str) -> Result<T> {
        let position = self.layout.position(label)?;
        let split = self.layout.split_indices(&[position]);
        let mut worst = T::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if split.selected[i] != split.selected[j] {
                    let v = modulus(self.matrix[(i, j)]);
                    if v > worst {
                        worst = v;
                    }
                }
            }
        }
        Ok(worst)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|z| z.is_zero())
    }
}
