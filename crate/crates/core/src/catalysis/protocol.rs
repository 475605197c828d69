use crate::error::{Error, Result};
use crate::linalg;
use crate::measures::{fidelity_with_pure, trace_distance};
use crate::qstate::{DensityOperator, QuantumChannel};
use crate::scalar::Real;

use super::construction::{copy_label, copy_labels, CatalystConstruction, REGISTER_LABEL};

/// Slack granted to the strict inequalities of the certificate so that the
/// exact case `ε = 0` (where both sides coincide) is accepted.
pub const CERTIFICATE_SLACK: f64 = 1e-9;

/// Outcome of one literal protocol run on `S_1 … S_n K`.
#[derive(Clone, Debug)]
pub struct ProtocolRunReport<T: Real> {
    pub n: usize,
    pub final_joint: DensityOperator<T>,
    /// `D(Tr_{S_1}[μ], τ)`.
    pub catalyst_deviation: T,
    /// Largest entrywise deviation of `Tr_{S_1}[μ]` from `τ`.
    pub catalyst_entry_deviation: T,
    /// `D(Tr_C[μ], |φ⟩⟨φ|)`.
    pub output_error: T,
    /// `(1/n) Σ_k D(γ_k, φ)`.
    pub mean_marginal_error: T,
    /// `D(Γ, φ^{⊗n})`.
    pub gamma_error: T,
    /// `D(μ, Tr_C[μ] ⊗ τ)`.
    pub decoupling_error: T,
    /// `D(μ, |φ⟩⟨φ| ⊗ τ)`.
    pub ideal_distance: T,
    /// `F(Tr_C[μ], |φ⟩⟨φ|)`.
    pub system_fidelity: T,
    /// Largest Schmidt coefficient of a purification of `Tr_C[μ]`.
    pub leading_schmidt: T,
    /// Largest coherence between different register values in `μ`.
    pub register_coherence: T,
    pub epsilon_bound: T,
    /// `ε + 3√ε`.
    pub decoupling_bound: T,
}

/// Intermediate states of a run.
#[derive(Clone, Debug)]
pub struct ProtocolTrace<T: Real> {
    /// `ρ^{S_1} ⊗ τ`.
    pub initial: DensityOperator<T>,
    /// After measuring `K` and applying `Λ` on outcome `n`.
    pub mu_i: DensityOperator<T>,
    /// After the cyclic shift on `K`.
    pub mu_ii: DensityOperator<T>,
    /// After the cyclic permutation of `S_1 … S_n`.
    pub final_joint: DensityOperator<T>,
}

pub fn run_protocol<T: Real>(construction: &CatalystConstruction<T>, channel: &QuantumChannel<T>) -> Result<ProtocolRunReport<T>> {
    run_protocol_traced(construction, channel).map(|(report, _)| report)
}

/// Runs steps (i)-(iii) and evaluates every report quantity.
pub fn run_protocol_traced<T: Real>(
    construction: &CatalystConstruction<T>,
    channel: &QuantumChannel<T>,
) -> Result<(ProtocolRunReport<T>, ProtocolTrace<T>)> {
    let (phi, epsilon) = construction
        .target
        .clone()
        .ok_or_else(|| Error::InvalidParameter("construction has no target state; call with_target".into()))?;
    let n = construction.n;
    let system = construction.system();
    let all_copies: Vec<String> = (1..=n).flat_map(|i| copy_labels(system, i)).collect();
    let first = copy_labels(system, 1);
    let catalyst_labels: Vec<String> = construction.tau.layout().labels().iter().map(|l| l.to_string()).collect();

    if channel.dim() != construction.gamma.dim() {
        return Err(Error::DimensionMismatch { expected: construction.gamma.dim(), found: channel.dim() });
    }
    let inputs = construction.rho.tensor_power(n, copy_label)?;
    let produced = inputs.apply_channel(channel, &all_copies)?;
    let deviation = linalg::max_abs_diff(produced.matrix(), construction.gamma.matrix());
    if deviation > T::tol(1e-8) {
        return Err(Error::InconsistentChannel { deviation: deviation.as_f64() });
    }

    let rho_1 = construction.rho.relabeled(|l| copy_label(l, 1))?;
    let initial = rho_1.tensor(&construction.tau)?;

    // (i) measure K; Λ on outcome n; forget the outcome except through K
    let basis: Vec<_> = (0..n).map(|k| linalg::basis_vector::<T>(n, k)).collect();
    let outcomes = initial.projective_measure(&basis, REGISTER_LABEL)?;
    let mut branches = Vec::with_capacity(n);
    for (k, outcome) in outcomes.into_iter().enumerate() {
        let Some(post) = outcome.post_state else { continue };
        let post = if k + 1 == n {
            let block = post.partial_trace(&[REGISTER_LABEL])?.apply_channel(channel, &all_copies)?;
            let flag = post.reduced(&[REGISTER_LABEL])?;
            block.tensor(&flag)?
        } else {
            post
        };
        branches.push((outcome.probability, post));
    }
    let parts: Vec<(T, &DensityOperator<T>)> = branches.iter().map(|(p, s)| (*p, s)).collect();
    let mu_i = DensityOperator::mixture(&parts)?.hermitized();

    // (ii) |k⟩ → |k+1⟩, |n⟩ → |1⟩
    let mu_ii = mu_i.apply_local_unitary(&linalg::shift(n, 1), &[REGISTER_LABEL])?;

    // (iii) S_i → S_{i+1}, S_n → S_1
    let mut order: Vec<String> = Vec::with_capacity(mu_ii.layout().len());
    for i in 1..=n {
        let source = if i == 1 { n } else { i - 1 };
        order.extend(copy_labels(system, source));
    }
    order.push(REGISTER_LABEL.to_string());
    let final_joint = mu_ii.permute_subsystems(&order)?;

    let catalyst = final_joint.reduced(&catalyst_labels)?;
    let output = final_joint.reduced(&first)?;
    let phi_1 = phi.relabeled(|l| copy_label(l, 1))?;
    let ideal_output = phi_1.density();
    let ideal_gamma = phi.density().tensor_power(n, copy_label)?;

    let mut mean_marginal_error = T::zero();
    for k in 1..=n {
        mean_marginal_error += trace_distance(&construction.gamma_marginal(k)?, &phi.density())?;
    }
    mean_marginal_error /= T::lit(n as f64);

    let purified = output.purify()?;
    let leading_schmidt = purified.schmidt(&first)?.coefficients.first().copied().unwrap_or_else(T::zero);

    let report = ProtocolRunReport {
        n,
        catalyst_deviation: trace_distance(&catalyst, &construction.tau)?,
        catalyst_entry_deviation: linalg::max_abs_diff(catalyst.matrix(), construction.tau.matrix()),
        output_error: trace_distance(&output, &ideal_output)?,
        mean_marginal_error,
        gamma_error: trace_distance(&construction.gamma, &ideal_gamma)?,
        decoupling_error: trace_distance(&final_joint, &output.tensor(&construction.tau)?)?,
        ideal_distance: trace_distance(&final_joint, &ideal_output.tensor(&construction.tau)?)?,
        system_fidelity: fidelity_with_pure(&output, &phi_1)?,
        leading_schmidt,
        register_coherence: final_joint.off_block_magnitude(REGISTER_LABEL)?,
        epsilon_bound: epsilon,
        decoupling_bound: epsilon + T::lit(3.0) * epsilon.sqrt(),
        final_joint: final_joint.clone(),
    };
    Ok((report, ProtocolTrace { initial, mu_i, mu_ii, final_joint }))
}

/// Decoupling certificate: `D(μ, Tr_C[μ] ⊗ τ) < ε + 3√ε` and
/// `D(μ, φ ⊗ τ) < ε + 3√ε`, with the intermediate links
/// `F(σ^S, φ) > √(1-ε)` and `λ₀ > √(1-ε)`.
pub fn certify_decoupling<T: Real>(report: &ProtocolRunReport<T>) -> bool {
    let slack = T::tol(CERTIFICATE_SLACK);
    let threshold = (T::one() - report.epsilon_bound).max(T::zero()).sqrt();
    report.decoupling_error < report.decoupling_bound + slack
        && report.ideal_distance < report.decoupling_bound + slack
        && report.system_fidelity > threshold - slack
        && report.leading_schmidt > threshold - slack
}
