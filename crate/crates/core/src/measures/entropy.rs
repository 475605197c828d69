use std::fmt;

use crate::error::{Error, Result};
use crate::qstate::{split_cut, DensityOperator, PureState};
use crate::scalar::Real;

use super::probability::shannon_entropy;

/// Entropy in bits.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct Entropy<T: Real>(T);

impl<T: Real> Entropy<T> {
    pub fn new(bits: T) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> T {
        self.0
    }
}

impl<T: Real> fmt::Display for Entropy<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// `H(ρ) = -Tr[ρ log₂ ρ]` over the clamped spectrum.
pub fn von_neumann_entropy<T: Real>(rho: &DensityOperator<T>) -> Entropy<T> {
    Entropy(shannon_entropy(&rho.eigenvalues()).max(T::zero()))
}

/// Entropy of either reduced state of `psi` across `cut`, from the Schmidt
/// spectrum.
pub fn entanglement_entropy<T: Real, S: AsRef<str>>(psi: &PureState<T>, cut: &[S]) -> Result<Entropy<T>> {
    let schmidt = psi.schmidt(cut)?;
    Ok(Entropy(shannon_entropy(&schmidt.spectrum()).max(T::zero())))
}

/// Entropy of the marginal on `labels`; the empty set has entropy zero.
pub fn marginal_entropy<T: Real, S: AsRef<str>>(rho: &DensityOperator<T>, labels: &[S]) -> Result<Entropy<T>> {
    if labels.is_empty() {
        return Ok(Entropy(T::zero()));
    }
    Ok(von_neumann_entropy(&rho.reduced(labels)?))
}

/// Entropy of the marginal of a pure state on `labels`, computed through the
/// Schmidt decomposition (cheaper than forming the reduced operator).
pub fn pure_marginal_entropy<T: Real, S: AsRef<str>>(psi: &PureState<T>, labels: &[S]) -> Result<Entropy<T>> {
    let positions = psi.layout().positions(labels)?;
    if positions.is_empty() || positions.len() == psi.layout().len() {
        return Ok(Entropy(T::zero()));
    }
    entanglement_entropy(psi, labels)
}

/// `H(A|B) = H(AB) - H(B)` in bits; may be negative.
pub fn conditional_entropy<T: Real, S: AsRef<str>>(rho: &DensityOperator<T>, a: &[S], b: &[S]) -> Result<T> {
    let pa = rho.layout().positions(a)?;
    let pb = rho.layout().positions(b)?;
    if let Some(&shared) = pa.iter().find(|p| pb.contains(p)) {
        return Err(Error::InvalidParameter(format!(
            "label `{}` is on both sides of the conditional entropy",
            rho.layout().subsystems()[shared].label
        )));
    }
    let joint: Vec<&str> = a.iter().chain(b).map(|s| s.as_ref()).collect();
    Ok(marginal_entropy(rho, &joint)?.bits() - marginal_entropy(rho, b)?.bits())
}

/// Pure-state version of [`conditional_entropy`].
pub fn conditional_entropy_pure<T: Real, S: AsRef<str>>(psi: &PureState<T>, a: &[S], b: &[S]) -> Result<T> {
    let pa = psi.layout().positions(a)?;
    let pb = psi.layout().positions(b)?;
    if pa.iter().any(|p| pb.contains(p)) {
        return Err(Error::InvalidParameter("overlapping label sets".into()));
    }
    let joint: Vec<&str> = a.iter().chain(b).map(|s| s.as_ref()).collect();
    Ok(pure_marginal_entropy(psi, &joint)?.bits() - pure_marginal_entropy(psi, b)?.bits())
}

/// Purity above which an operator counts as a pure state.
pub const PURITY_THRESHOLD: f64 = 1.0 - 1e-8;

/// Squashed entanglement of a pure state, which equals its entanglement
/// entropy across the cut. Mixed inputs are rejected: the general infimum
/// over extensions is not evaluated.
pub fn squashed_entanglement_pure<T: Real, S: AsRef<str>>(rho: &DensityOperator<T>, cut: &[S]) -> Result<Entropy<T>> {
    let purity = rho.purity();
    if purity <= T::one() - T::tol(1.0 - PURITY_THRESHOLD) {
        return Err(Error::MixedInput { purity: purity.as_f64() });
    }
    split_cut(rho.layout(), cut)?;
    entanglement_entropy(&rho.as_pure()?, cut)
}
