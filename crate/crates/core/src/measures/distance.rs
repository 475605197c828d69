use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::qstate::{DensityOperator, PureState};
use crate::scalar::{cr, Real};

fn check_shapes<T: Real>(rho: &DensityOperator<T>, sigma: &DensityOperator<T>) -> Result<()> {
    if !rho.layout().same_shape(sigma.layout()) {
        return Err(Error::LayoutMismatch(format!("{} vs {}", rho.layout(), sigma.layout())));
    }
    Ok(())
}

/// `D(ρ, σ) = ½‖ρ - σ‖₁`, clamped to `[0, 1]`.
pub fn trace_distance<T: Real>(rho: &DensityOperator<T>, sigma: &DensityOperator<T>) -> Result<T> {
    check_shapes(rho, sigma)?;
    Ok(trace_distance_matrices(rho.matrix(), sigma.matrix()))
}

pub(crate) fn trace_distance_matrices<T: Real>(a: &Mat<T>, b: &Mat<T>) -> T {
    let half = linalg::eigvalsh(&(a - b)).iter().fold(T::zero(), |acc, v| acc + v.abs()) * T::lit(0.5);
    half.max(T::zero()).min(T::one())
}

/// Square root of a positive operator. Eigenvalues below the solver's
/// resolution `d·ε·λ_max` count as zero: their roots (≈ 1e-8 for round-off
/// of 1e-17) would otherwise leak into every product with `√σ`.
fn psd_sqrt<T: Real>(m: &Mat<T>) -> Mat<T> {
    let (mut values, vectors) = linalg::eigh(m);
    linalg::clamp_spectrum(&mut values);
    let top = values.first().copied().unwrap_or_else(T::zero).max(T::zero());
    let floor = T::default_epsilon() * T::lit(values.len() as f64) * top;
    let roots = nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&v| cr(if v > floor { v.sqrt() } else { T::zero() })),
    );
    &vectors * Mat::from_diagonal(&roots) * vectors.adjoint()
}

/// `F(ρ, σ) = Tr √(√ρ σ √ρ) = ‖√ρ √σ‖₁`, taken as the sum of singular values
/// of `√ρ √σ`. Going through the eigenvalues of `√ρ σ √ρ` instead would turn
/// round-off of order 1e-17 into spurious contributions of order 1e-9.
pub fn fidelity<T: Real>(rho: &DensityOperator<T>, sigma: &DensityOperator<T>) -> Result<T> {
    check_shapes(rho, sigma)?;
    let product = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
    let (singular, _, _) = linalg::thin_svd(&product);
    let f = singular.iter().fold(T::zero(), |acc, &s| acc + s);
    Ok(f.max(T::zero()).min(T::one()))
}

/// Closed form `√⟨φ|ρ|φ⟩` for a pure second argument.
pub fn fidelity_with_pure<T: Real>(rho: &DensityOperator<T>, phi: &PureState<T>) -> Result<T> {
    if !rho.layout().same_shape(phi.layout()) {
        return Err(Error::LayoutMismatch(format!("{} vs {}", rho.layout(), phi.layout())));
    }
    let v = phi.amplitudes();
    let overlap = v.dotc(&(rho.matrix() * v)).re;
    Ok(overlap.max(T::zero()).sqrt().min(T::one()))
}

/// `√(1 - F²) - D`, nonnegative by the Fuchs-van de Graaf inequality.
pub fn fuchs_van_de_graaf_gap<T: Real>(rho: &DensityOperator<T>, sigma: &DensityOperator<T>) -> Result<T> {
    let f = fidelity(rho, sigma)?;
    let d = trace_distance(rho, sigma)?;
    Ok((T::one() - f * f).max(T::zero()).sqrt() - d)
}
