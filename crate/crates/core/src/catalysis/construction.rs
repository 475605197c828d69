use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::measures::trace_distance;
use crate::qstate::{DensityOperator, Party, PureState, QuantumChannel, Subsystem, SystemLayout};
use crate::scalar::{cr, Real};

/// Label of the classical register `K`.
pub const REGISTER_LABEL: &str = "K";

/// Label of subsystem `label` in copy `copy` (1-based) of `S`.
pub fn copy_label(label: &str, copy: usize) -> String {
    format!("{label}_{copy}")
}

/// Labels of copy `copy` of `system`, in layout order.
pub fn copy_labels(system: &SystemLayout, copy: usize) -> Vec<String> {
    system.labels().iter().map(|l| copy_label(l, copy)).collect()
}

/// `S_1 ⊗ … ⊗ S_n` with labels from [`copy_label`].
pub fn copy_layout(system: &SystemLayout, n: usize) -> Result<SystemLayout> {
    let mut parts = Vec::with_capacity(system.len() * n);
    for copy in 1..=n {
        for s in system.subsystems() {
            parts.push(Subsystem::new(copy_label(&s.label, copy), s.dim, s.party));
        }
    }
    SystemLayout::new(parts)
}

/// Noise mixed into the synthetic `Γ`.
#[derive(Clone, Debug)]
pub enum Noise<T: Real> {
    /// `I / d^n` on `S^{⊗n}`.
    MaximallyMixed,
    /// `σ^{⊗n}` for a state `σ` on `S`.
    InputState(DensityOperator<T>),
}

impl<T: Real> Noise<T> {
    fn state(&self, system: &SystemLayout, n: usize) -> Result<DensityOperator<T>> {
        let layout = copy_layout(system, n)?;
        match self {
            Noise::MaximallyMixed => Ok(DensityOperator::maximally_mixed(layout)),
            Noise::InputState(sigma) => {
                if !sigma.layout().same_shape(system) {
                    return Err(Error::LayoutMismatch(format!("noise on {} vs system {}", sigma.layout(), system)));
                }
                sigma.tensor_power(n, copy_label)?.with_layout(layout)
            }
        }
    }
}

fn check_epsilon<T: Real>(epsilon: T) -> Result<()> {
    if !(epsilon >= T::zero() && epsilon < T::one()) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} outside [0, 1)")));
    }
    Ok(())
}

/// The weight `δ` with `D((1-δ)φ^{⊗n} + δ·noise, φ^{⊗n}) = ε`.
pub fn mixing_weight<T: Real>(phi: &PureState<T>, n: usize, epsilon: T, noise: &Noise<T>) -> Result<T> {
    check_epsilon(epsilon)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if epsilon == T::zero() {
        return Ok(T::zero());
    }
    let target = phi.density().tensor_power(n, copy_label)?;
    let gap = trace_distance(&noise.state(phi.layout(), n)?, &target)?;
    let delta = epsilon / gap;
    if gap <= T::tol(1e-12) || delta > T::one() {
        return Err(Error::UnreachableEpsilon { epsilon: epsilon.as_f64() });
    }
    Ok(delta)
}

/// `Γ = (1-δ)|φ⟩⟨φ|^{⊗n} + δ·noise` at trace distance exactly `ε` from the
/// target, on the layout [`copy_layout`]`(φ, n)`.
pub fn make_synthetic_gamma<T: Real>(phi: &PureState<T>, n: usize, epsilon: T, noise: &Noise<T>) -> Result<DensityOperator<T>> {
    let delta = mixing_weight(phi, n, epsilon, noise)?;
    let target = phi.density().tensor_power(n, copy_label)?;
    if delta == T::zero() {
        return Ok(target);
    }
    let noise = noise.state(phi.layout(), n)?;
    DensityOperator::mixture(&[(T::one() - delta, &target), (delta, &noise)])
}

/// A channel with `Λ(input) = output`, both on the same layout shape.
///
/// For a pure `input = |Ψ⟩⟨Ψ|` this is `X ↦ ⟨Ψ|X|Ψ⟩ output + P⊥ X P⊥` with
/// `rank(output) + 1` Kraus operators. Mixed inputs fall back to the
/// replacement channel `X ↦ Tr[X] output`.
pub fn preparation_channel<T: Real>(input: &DensityOperator<T>, output: &DensityOperator<T>) -> Result<QuantumChannel<T>> {
    if !input.layout().same_shape(output.layout()) {
        return Err(Error::LayoutMismatch(format!("{} vs {}", input.layout(), output.layout())));
    }
    let labels: Vec<String> = input.layout().labels().iter().map(|l| l.to_string()).collect();
    let Ok(psi) = input.as_pure() else {
        return QuantumChannel::replacement(output).with_labels(labels.clone(), labels);
    };
    let d = input.dim();
    let v = psi.amplitudes();
    let (mut values, vectors) = linalg::eigh(output.matrix());
    linalg::clamp_spectrum(&mut values);
    let total = values.iter().fold(T::zero(), |a, &b| a + b);
    let mut kraus: Vec<Mat<T>> = values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > T::zero())
        .map(|(j, &s)| linalg::outer(&vectors.column(j).into_owned(), v) * cr((s / total).sqrt()))
        .collect();
    kraus.push(linalg::identity::<T>(d) - linalg::outer(v, v));
    QuantumChannel::new(kraus, labels.clone(), labels)
}

/// The catalyst `τ = (1/n) Σ_k ρ^{⊗(k-1)} ⊗ Γ_{n-k} ⊗ |k⟩⟨k|` on
/// `S_2 … S_n K`, together with the data it was built from.
#[derive(Clone, Debug)]
pub struct CatalystConstruction<T: Real> {
    pub(crate) n: usize,
    pub(crate) rho: DensityOperator<T>,
    pub(crate) gamma: DensityOperator<T>,
    pub(crate) tau: DensityOperator<T>,
    pub(crate) target: Option<(PureState<T>, T)>,
}

/// Builds `τ` for `n` copies. `gamma` must have the shape of `n` copies of
/// `rho`'s layout; it is relabelled to [`copy_layout`].
pub fn build_catalyst<T: Real>(rho: &DensityOperator<T>, gamma: &DensityOperator<T>, n: usize) -> Result<CatalystConstruction<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let system = rho.layout();
    let layout = copy_layout(system, n)?;
    if !gamma.layout().same_shape(&layout) {
        return Err(Error::LayoutMismatch(format!("gamma on {} but {n} copies of {} expected", gamma.layout(), system)));
    }
    let gamma = gamma.with_layout(layout)?;

    let copies = |from: usize, to: usize| -> Vec<String> { (from..=to).flat_map(|i| copy_labels(system, i)).collect() };
    let mut terms = Mat::zeros(0, 0);
    for k in 1..=n {
        let rhos = rho.tensor_power(k - 1, copy_label)?;
        let marginal = if n - k == 0 { linalg::identity(1) } else { gamma.reduced(&copies(1, n - k))?.into_matrix() };
        let flag = linalg::outer(&linalg::basis_vector::<T>(n, k - 1), &linalg::basis_vector(n, k - 1));
        let term = linalg::kron(&linalg::kron(rhos.matrix(), &marginal), &flag);
        terms = if k == 1 { term } else { terms + term };
    }
    let scale = cr(T::one() / T::lit(n as f64));
    let register = SystemLayout::new(vec![Subsystem::new(REGISTER_LABEL, n, Party::Alice)])?;
    let tau_layout = copy_layout(system, n)?.select(&(system.len()..system.len() * n).collect::<Vec<_>>()).concat(&register)?;
    let tau = DensityOperator::from_parts_unchecked(tau_layout, linalg::hermitize(&(terms * scale)));
    Ok(CatalystConstruction { n, rho: rho.clone(), gamma, tau, target: None })
}

impl<T: Real> CatalystConstruction<T> {
    /// Attaches the target `φ` and the accuracy `ε`, checking
    /// `D(Γ, φ^{⊗n}) ≤ ε` within `1e-9`.
    pub fn with_target(mut self, phi: &PureState<T>, epsilon: T) -> Result<Self> {
        check_epsilon(epsilon)?;
        if !phi.layout().same_shape(self.rho.layout()) {
            return Err(Error::LayoutMismatch(format!("target on {} vs system {}", phi.layout(), self.rho.layout())));
        }
        let phi = phi.with_layout(self.rho.layout().clone())?;
        let ideal = phi.density().tensor_power(self.n, copy_label)?;
        let distance = trace_distance(&self.gamma, &ideal)?;
        if distance > epsilon + T::tol(1e-9) {
            return Err(Error::UnreachableEpsilon { epsilon: epsilon.as_f64() });
        }
        self.target = Some((phi, epsilon));
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> &DensityOperator<T> {
        &self.rho
    }

    /// `Γ` on [`copy_layout`].
    pub fn gamma(&self) -> &DensityOperator<T> {
        &self.gamma
    }

    pub fn tau(&self) -> &DensityOperator<T> {
        &self.tau
    }

    pub fn target(&self) -> Option<&PureState<T>> {
        self.target.as_ref().map(|(phi, _)| phi)
    }

    pub fn epsilon(&self) -> Option<T> {
        self.target.as_ref().map(|(_, e)| *e)
    }

    /// Layout of one copy of `S`.
    pub fn system(&self) -> &SystemLayout {
        self.rho.layout()
    }

    /// `γ_k`, the marginal of `Γ` on copy `k`, relabelled to `S`.
    pub fn gamma_marginal(&self, k: usize) -> Result<DensityOperator<T>> {
        if k == 0 || k > self.n {
            return Err(Error::InvalidParameter(format!("copy {k} outside 1..={}", self.n)));
        }
        self.gamma.reduced(&copy_labels(self.system(), k))?.with_layout(self.system().clone())
    }

    /// Dimension of `S^{⊗n} ⊗ K`.
    pub fn joint_dim(&self) -> usize {
        self.gamma.dim() * self.n
    }
}

/// `ρ`, `Γ`, `τ` and a matching preparation channel for the synthetic family.
pub fn synthetic_construction<T: Real>(
    rho: &DensityOperator<T>,
    phi: &PureState<T>,
    n: usize,
    epsilon: T,
    noise: &Noise<T>,
) -> Result<(CatalystConstruction<T>, QuantumChannel<T>)> {
    if !rho.layout().same_shape(phi.layout()) {
        return Err(Error::LayoutMismatch(format!("{} vs {}", rho.layout(), phi.layout())));
    }
    let phi = phi.with_layout(rho.layout().clone())?;
    let gamma = make_synthetic_gamma(&phi, n, epsilon, noise)?;
    let input = rho.tensor_power(n, copy_label)?;
    let channel = preparation_channel(&input, &gamma)?;
    let construction = build_catalyst(rho, &gamma, n)?.with_target(&phi, epsilon)?;
    Ok((construction, channel))
}
