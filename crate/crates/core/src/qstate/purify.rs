use crate::error::Result;
use crate::linalg::{self, Vector};
use crate::scalar::{cr, Real};

use super::density::DensityOperator;
use super::layout::{Party, Subsystem, SystemLayout};
use super::pure::PureState;

impl<T: Real> DensityOperator<T> {
    /// Purification `Σ_i √p_i |e_i⟩|i⟩_T` on `layout ⊗ T`, where `T` is a
    /// reference of the full dimension. Eigenvalues are taken descending, so
    /// the Schmidt coefficients across the `layout | T` cut come out sorted.
    pub fn purify(&self) -> Result<PureState<T>> {
        let d = self.dim();
        let (mut values, vectors) = linalg::eigh(self.matrix());
        linalg::clamp_spectrum(&mut values);
        let mut amps = Vector::zeros(d * d);
        for (i, &p) in values.iter().enumerate() {
            let weight = p.max(T::zero()).sqrt();
            if weight == T::zero() {
                continue;
            }
            for x in 0..d {
                amps[x * d + i] = vectors[(x, i)] * cr(weight);
            }
        }
        let reference = Subsystem::new(reference_label(self.layout()), d, Party::Referee);
        let layout = self.layout().concat(&SystemLayout::new(vec![reference])?)?;
        PureState::normalized(layout, amps)
    }
}

/// `T`, primed until it does not collide with an existing label.
pub fn reference_label(layout: &SystemLayout) -> String {
    let mut label = String::from("T");
    while layout.contains(&label) {
        label.push('\'');
    }
    label
}
