use serde::Serialize;
use serde_json::{json, Value};

use crate::builtin;
use crate::error::{Error, Result};
use crate::measures::{conditional_entropy_pure, pure_marginal_entropy, squashed_entanglement_pure, ProbabilityVector};
use crate::qstate::{DensityOperator, Party, PureState, SystemLayout};
use crate::scalar::Real;

use super::spectrum::entropy_to_spectrum;

/// Conditional entropies with `|H| <` this count as zero.
pub const ZERO_BAND: f64 = 1e-9;

const AUDIT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeCase {
    Zero,
    PositiveNeedsResource,
    NegativeYieldsResource,
}

impl MergeCase {
    fn classify<T: Real>(h: T) -> Self {
        if h.abs() < T::tol(ZERO_BAND) {
            MergeCase::Zero
        } else if h > T::zero() {
            MergeCase::PositiveNeedsResource
        } else {
            MergeCase::NegativeYieldsResource
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MergeCase::Zero => "zero",
            MergeCase::PositiveNeedsResource => "positive_needs_resource",
            MergeCase::NegativeYieldsResource => "negative_yields_resource",
        }
    }
}

/// Who Charlie merges with in assisted distillation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    #[serde(rename = "merge_C_to_A")]
    MergeCToA,
    #[serde(rename = "merge_C_to_B")]
    MergeCToB,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::MergeCToA => "merge_C_to_A",
            Direction::MergeCToB => "merge_C_to_B",
        }
    }
}

/// Signed entropy accounting, in bits.
#[derive(Clone, Debug, PartialEq)]
pub struct ResourceLedger<T: Real> {
    /// `H(A|B)` for merging; `H(C|A)` or `H(C|B)` (per `direction`) for
    /// distillation.
    pub conditional_entropy: T,
    pub case: MergeCase,
    /// Schmidt spectrum of the consumed or produced pure state.
    pub resource_spectrum: ProbabilityVector<T>,
    pub resource_entropy: T,
    pub direction: Option<Direction>,
}

impl<T: Real> ResourceLedger<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "conditional_entropy": self.conditional_entropy.as_f64(),
            "case": self.case,
            "resource_spectrum": self.resource_spectrum.entries().iter().map(|p| p.as_f64()).collect::<Vec<_>>(),
            "resource_entropy": self.resource_entropy.as_f64(),
            "direction": self.direction,
        })
    }
}

fn by_party(layout: &SystemLayout, parties: [Party; 3]) -> Result<[Vec<String>; 3]> {
    if layout.subsystems().iter().all(|s| parties.contains(&s.party)) {
        return Ok(parties.map(|p| layout.labels_of(p)));
    }
    if layout.len() == 3 {
        let labels = layout.labels();
        return Ok([0, 1, 2].map(|i| vec![labels[i].to_string()]));
    }
    Err(Error::InvalidParameter(format!(
        "cannot assign {}/{}/{} roles in {layout}",
        parties[0], parties[1], parties[2]
    )))
}

/// Label sets of the referee `R`, the sender `A` and the receiver `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergingRoles {
    pub referee: Vec<String>,
    pub alice: Vec<String>,
    pub bob: Vec<String>,
}

impl MergingRoles {
    /// Roles from party tags (Referee, Alice, Bob). Three-subsystem layouts
    /// with other tags are read positionally as `R, A, B`.
    pub fn from_layout(layout: &SystemLayout) -> Result<Self> {
        let [referee, alice, bob] = by_party(layout, [Party::Referee, Party::Alice, Party::Bob])?;
        Ok(Self { referee, alice, bob })
    }
}

/// Label sets of Alice, Bob and the helper Charlie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistillationRoles {
    pub alice: Vec<String>,
    pub bob: Vec<String>,
    pub charlie: Vec<String>,
}

impl DistillationRoles {
    /// Roles from party tags (Alice, Bob, Charlie). Three-subsystem layouts
    /// with other tags are read positionally as `A, B, C`.
    pub fn from_layout(layout: &SystemLayout) -> Result<Self> {
        let [alice, bob, charlie] = by_party(layout, [Party::Alice, Party::Bob, Party::Charlie])?;
        Ok(Self { alice, bob, charlie })
    }
}

fn ledger<T: Real>(conditional_entropy: T, resource_entropy: T, direction: Option<Direction>) -> Result<ResourceLedger<T>> {
    let case = MergeCase::classify(conditional_entropy);
    let resource_entropy = if case == MergeCase::Zero && direction.is_none() { T::zero() } else { resource_entropy };
    Ok(ResourceLedger {
        conditional_entropy,
        case,
        resource_spectrum: entropy_to_spectrum(resource_entropy)?,
        resource_entropy,
        direction,
    })
}

pub fn merging_ledger<T: Real>(psi: &PureState<T>) -> Result<ResourceLedger<T>> {
    merging_ledger_with(psi, &MergingRoles::from_layout(psi.layout())?)
}

/// Classifies `H(A|B)`: positive means an entangled state of that entropy
/// is consumed, negative means one of entropy `-H(A|B)` is gained.
pub fn merging_ledger_with<T: Real>(psi: &PureState<T>, roles: &MergingRoles) -> Result<ResourceLedger<T>> {
    let h = conditional_entropy_pure(psi, &roles.alice, &roles.bob)?;
    ledger(h, h.abs(), None)
}

/// Squashed entanglement of a pure product, zero for a trivial cut.
fn squashed<T: Real>(state: &PureState<T>, cut: &[String]) -> Result<T> {
    if cut.is_empty() || cut.len() == state.layout().len() {
        return Ok(T::zero());
    }
    Ok(squashed_entanglement_pure(&state.density(), cut)?.bits())
}

/// Numbers behind [`merging_optimality_audit`].
#[derive(Clone, Debug, PartialEq)]
pub struct MergingAudit<T: Real> {
    /// Squashed entanglement between Bob's side and the rest before merging.
    pub initial: T,
    /// The same quantity after merging.
    pub final_value: T,
    /// `initial` predicted from marginal entropies.
    pub initial_expected: T,
    /// `final_value` predicted from marginal entropies.
    pub final_expected: T,
    pub passes: bool,
}

/// Assembles the before/after states of catalytic merging and compares
/// Bob's squashed entanglement across them.
///
/// Gains (case negative): `ψ^{RAB}` against `ψ^{RBB'} ⊗ φ₂`, requiring
/// `E_sq^{B|AR} = H(ψ^B) ≥ E_sq^{BB'B̃|ÃR} = H(ψ^{AB}) + E(φ₂)`.
/// Costs (case positive): `ψ^{RAB} ⊗ φ₁` against `ψ^{RBB'}`, requiring
/// `H(ψ^B) + E(φ₁) ≥ H(ψ^{AB})`. Case zero checks both with no resource.
pub fn audit_merging<T: Real>(psi: &PureState<T>, ledger: &ResourceLedger<T>, roles: &MergingRoles) -> Result<MergingAudit<T>> {
    let tol = T::tol(AUDIT_TOLERANCE);
    let h_b = pure_marginal_entropy(psi, &roles.bob)?.bits();
    let joint: Vec<String> = roles.alice.iter().chain(&roles.bob).cloned().collect();
    let h_ab = pure_marginal_entropy(psi, &joint)?.bits();

    let spectrum: Vec<f64> = ledger.resource_spectrum.entries().iter().map(|p| p.as_f64()).collect();
    let resource = builtin::from_spectrum::<T>(&spectrum, spectrum.len())?.relabeled(|l| format!("{l}~"))?;
    let resource_entropy = squashed(&resource, &["A~".to_string()])?;
    let merged = psi.relabeled(|l| if roles.alice.iter().any(|a| a == l) { format!("{l}'") } else { l.to_string() })?;
    let primed: Vec<String> = roles.alice.iter().map(|l| format!("{l}'")).collect();

    let bob_side: Vec<String> = roles.bob.clone();
    let bob_merged: Vec<String> = roles.bob.iter().chain(&primed).cloned().collect();
    let with_tilde = |mut v: Vec<String>| {
        v.push("B~".to_string());
        v
    };

    let audit = match ledger.case {
        MergeCase::NegativeYieldsResource => {
            let initial = squashed(psi, &bob_side)?;
            let final_value = squashed(&merged.tensor(&resource)?, &with_tilde(bob_merged))?;
            MergingAudit { initial, final_value, initial_expected: h_b, final_expected: h_ab + resource_entropy, passes: false }
        }
        MergeCase::PositiveNeedsResource => {
            let initial = squashed(&psi.tensor(&resource)?, &with_tilde(bob_side))?;
            let final_value = squashed(&merged, &bob_merged)?;
            MergingAudit { initial, final_value, initial_expected: h_b + resource_entropy, final_expected: h_ab, passes: false }
        }
        MergeCase::Zero => {
            let initial = squashed(psi, &bob_side)?;
            let final_value = squashed(&merged, &bob_merged)?;
            let extra = ledger.resource_entropy.abs();
            MergingAudit { initial, final_value, initial_expected: h_b + extra, final_expected: h_ab, passes: false }
        }
    };
    let consistent = (audit.initial - audit.initial_expected).abs() <= tol
        && (audit.final_value - audit.final_expected).abs() <= tol
        && (resource_entropy - ledger.resource_entropy).abs() <= tol;
    let monotone = audit.final_value <= audit.initial + tol;
    let balanced = ledger.case != MergeCase::Zero || (audit.initial - audit.final_value).abs() <= tol;
    Ok(MergingAudit { passes: consistent && monotone && balanced, ..audit })
}

/// Whether `ledger` respects the squashed-entanglement bounds for `psi`.
pub fn merging_optimality_audit<T: Real>(psi: &PureState<T>, ledger: &ResourceLedger<T>) -> Result<bool> {
    let roles = MergingRoles::from_layout(psi.layout())?;
    Ok(audit_merging(psi, ledger, &roles)?.passes)
}

pub fn distillation_ledger<T: Real>(psi: &PureState<T>) -> Result<ResourceLedger<T>> {
    distillation_ledger_with(psi, &DistillationRoles::from_layout(psi.layout())?)
}

/// Charlie merges with whichever of Alice and Bob leaves the larger final
/// entanglement `min{H(ψ^A), H(ψ^B)}`; ties go to Bob.
pub fn distillation_ledger_with<T: Real>(psi: &PureState<T>, roles: &DistillationRoles) -> Result<ResourceLedger<T>> {
    let h_a = pure_marginal_entropy(psi, &roles.alice)?.bits();
    let h_b = pure_marginal_entropy(psi, &roles.bob)?.bits();
    let (direction, conditional, gained) = if h_b < h_a {
        (Direction::MergeCToA, h_b - h_a, h_b)
    } else {
        (Direction::MergeCToB, h_a - h_b, h_a)
    };
    ledger(conditional, gained, Some(direction))
}

/// `claimed ≤ min{E_sq^{A|BC}, E_sq^{B|AC}}` within `1e-9`.
pub fn distillation_converse_audit<T: Real>(psi: &PureState<T>, claimed: T) -> Result<bool> {
    let roles = DistillationRoles::from_layout(psi.layout())?;
    let rho: DensityOperator<T> = psi.density();
    let bound = |cut: &[String]| -> Result<T> {
        if cut.is_empty() || cut.len() == psi.layout().len() {
            return Ok(T::zero());
        }
        Ok(squashed_entanglement_pure(&rho, cut)?.bits())
    };
    let limit = bound(&roles.alice)?.min(bound(&roles.bob)?);
    Ok(claimed <= limit + T::tol(AUDIT_TOLERANCE))
}
