use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Vector};
use crate::scalar::{cr, Real, C};

use super::density::DensityOperator;
use super::kernel;
use super::layout::SystemLayout;

/// Normalized state vector over a [`SystemLayout`].
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T: Real> {
    layout: SystemLayout,
    amplitudes: Vector<T>,
}

impl<T: Real> PureState<T> {
    /// Validates length and unit norm (within 1e-10).
    pub fn new(layout: SystemLayout, amplitudes: Vector<T>) -> Result<Self> {
        let d = layout.total_dim();
        if amplitudes.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: amplitudes.len() });
        }
        let deviation = (amplitudes.norm() - T::one()).abs();
        if deviation > T::tol(1e-10) {
            return Err(Error::NotNormalized { deviation: deviation.as_f64() });
        }
        Ok(Self { layout, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm first.
    pub fn normalized(layout: SystemLayout, amplitudes: Vector<T>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm <= T::zero() {
            return Err(Error::NotNormalized { deviation: 1.0 });
        }
        Self::new(layout, amplitudes / cr(norm))
    }

    pub fn from_real(layout: SystemLayout, amplitudes: &[f64]) -> Result<Self> {
        let v = Vector::from_iterator(amplitudes.len(), amplitudes.iter().map(|&a| cr(T::lit(a))));
        Self::new(layout, v)
    }

    pub fn basis(layout: SystemLayout, index: usize) -> Result<Self> {
        let d = layout.total_dim();
        if index >= d {
            return Err(Error::DimensionMismatch { expected: d, found: index });
        }
        Ok(Self { amplitudes: linalg::basis_vector(d, index), layout })
    }

    pub(crate) fn from_parts_unchecked(layout: SystemLayout, amplitudes: Vector<T>) -> Self {
        Self { layout, amplitudes }
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &Vector<T> {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn inner(&self, other: &PureState<T>) -> C<T> {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn density(&self) -> DensityOperator<T> {
        DensityOperator::from_parts_unchecked(self.layout.clone(), linalg::outer(&self.amplitudes, &self.amplitudes))
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &PureState<T>) -> Result<Self> {
        Ok(Self {
            layout: self.layout.concat(&other.layout)?,
            amplitudes: linalg::kron_vec(&self.amplitudes, &other.amplitudes),
        })
    }

    /// `self^{⊗n}` with copy `i` (1-based) labelled by `label(original, i)`.
    pub fn tensor_power(&self, n: usize, label: impl Fn(&str, usize) -> String) -> Result<Self> {
        let mut out = PureState::from_parts_unchecked(SystemLayout::trivial(), Vector::from_element(1, cr(T::one())));
        for i in 1..=n {
            out = out.tensor(&self.relabeled(|l| label(l, i))?)?;
        }
        Ok(out)
    }

    /// Same amplitudes with labels rewritten.
    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        Ok(Self { layout: self.layout.map_labels(f)?, amplitudes: self.amplitudes.clone() })
    }

    /// Same amplitudes on a layout of identical shape.
    pub fn with_layout(&self, layout: SystemLayout) -> Result<Self> {
        if !layout.same_shape(&self.layout) {
            return Err(Error::LayoutMismatch(format!("{} vs {}", self.layout, layout)));
        }
        Ok(Self { layout, amplitudes: self.amplitudes.clone() })
    }

    /// Applies unitary `u` to `targets` (in the given order).
    pub fn apply_local_unitary<S: AsRef<str>>(&self, u: &Mat<T>, targets: &[S]) -> Result<Self> {
        let positions = self.layout.positions(targets)?;
        check_unitary(u, self.layout.dim_of(targets)?)?;
        let col = Mat::from_column_slice(self.dim(), 1, self.amplitudes.as_slice());
        let out = kernel::left_apply(&self.layout, &positions, u, &col);
        Ok(Self { layout: self.layout.clone(), amplitudes: out.column(0).into_owned() })
    }

    /// Moves subsystems so that the layout becomes `order` (labels travel
    /// with their content).
    pub fn reorder<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let positions = full_permutation(&self.layout, order)?;
        let map = self.layout.reorder_map(&positions);
        let amplitudes = Vector::from_iterator(self.dim(), map.iter().map(|&old| self.amplitudes[old]));
        Ok(Self { layout: self.layout.select(&positions), amplitudes })
    }

    /// Moves content between slots: position `i` of the result holds the
    /// content previously held by `order[i]`. The layout itself is unchanged,
    /// so each moved subsystem must land on a slot of equal dimension.
    pub fn permute_subsystems<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let moved = self.reorder(order)?;
        check_dimension_preserving(&self.layout, &moved.layout)?;
        Ok(Self { layout: self.layout.clone(), amplitudes: moved.amplitudes })
    }

    /// Reduced density operator on `keep` (layout order).
    pub fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityOperator<T>> {
        let discard = self.layout.complement(keep)?;
        self.density().partial_trace(&discard)
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.iter().all(|z| z.is_zero())
    }
}

pub(crate) fn check_unitary<T: Real>(u: &Mat<T>, dim: usize) -> Result<()> {
    if u.nrows() != dim || u.ncols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: u.nrows().max(u.ncols()) });
    }
    let deviation = linalg::unitarity_deviation(u);
    if deviation > T::tol(1e-8) {
        return Err(Error::NotUnitary { deviation: deviation.as_f64() });
    }
    Ok(())
}

pub(crate) fn full_permutation<S: AsRef<str>>(layout: &SystemLayout, order: &[S]) -> Result<Vec<usize>> {
    let positions = layout.positions(order)?;
    if positions.len() != layout.len() {
        return Err(Error::InvalidParameter(format!(
            "permutation names {} of {} subsystems",
            positions.len(),
            layout.len()
        )));
    }
    Ok(positions)
}

pub(crate) fn check_dimension_preserving(original: &SystemLayout, moved: &SystemLayout) -> Result<()> {
    for (slot, incoming) in original.subsystems().iter().zip(moved.subsystems()) {
        if slot.dim != incoming.dim {
            return Err(Error::DimensionMismatch { expected: slot.dim, found: incoming.dim });
        }
    }
    Ok(())
}
