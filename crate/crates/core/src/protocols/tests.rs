use super::*;
use crate::builtin;
use crate::measures::{shannon_entropy, ProbabilityVector};
use crate::qstate::{Party, PureState, SystemLayout};

fn binary_entropy(p: f64) -> f64 {
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

fn rab(dims: [usize; 3], amps: &[f64]) -> PureState<f64> {
    let layout = SystemLayout::from_parts([("R", dims[0], Party::Referee), ("A", dims[1], Party::Alice), ("B", dims[2], Party::Bob)])
        .unwrap();
    PureState::from_real(layout, amps).unwrap()
}

fn h() -> f64 {
    0.5f64.sqrt()
}

/// Bell pair on `R, A`; `B` is one-dimensional.
fn bell_ra() -> PureState<f64> {
    rab([2, 2, 1], &[h(), 0.0, 0.0, h()])
}

/// Bell pair on `A, B`; `R` is one-dimensional.
fn bell_ab() -> PureState<f64> {
    rab([1, 2, 2], &[h(), 0.0, 0.0, h()])
}

fn forged(case: MergeCase, conditional_entropy: f64, resource_entropy: f64) -> ResourceLedger<f64> {
    ResourceLedger {
        conditional_entropy,
        case,
        resource_spectrum: entropy_to_spectrum(resource_entropy).unwrap(),
        resource_entropy,
        direction: None,
    }
}

#[test]
fn spectrum_examples() {
    assert_eq!(entropy_to_spectrum(1.0).unwrap().entries(), &[0.5, 0.5]);
    assert_eq!(entropy_to_spectrum(0.0).unwrap().entries(), &[1.0]);
    let half = entropy_to_spectrum(0.5f64).unwrap();
    // bisection oracle on the binary entropy, run independently
    assert!((half.entries()[0] - 0.8899721355616403).abs() < 1e-12);
    assert!((half.entries()[1] - 0.11002786443835966).abs() < 1e-12);
    // (0.5, 0.25, 0.25) has entropy exactly 1.5
    let three = entropy_to_spectrum(1.5f64).unwrap();
    assert_eq!(three.len(), 3);
    assert!(three.sup_distance(&ProbabilityVector::from_f64(&[0.5, 0.25, 0.25]).unwrap()) < 1e-12);
    assert_eq!(entropy_to_spectrum(2.0).unwrap().entries(), &[0.25; 4]);
    assert!(entropy_to_spectrum(-0.1).is_err());
}

#[test]
fn spectrum_is_minimal_and_faithful() {
    for i in 0..=300 {
        let t = i as f64 / 100.0;
        let p = entropy_to_spectrum(t).unwrap();
        assert!((shannon_entropy(p.entries()) - t).abs() < 1e-9, "t = {t}");
        let minimal = if t == 0.0 { 1 } else { (2f64.powf(t) - 1e-12).ceil() as usize };
        assert_eq!(p.len(), minimal.max(1), "t = {t}");
        assert!(p.entries().windows(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn merging_cases_for_builtin_states() {
    let needs = merging_ledger(&bell_ra()).unwrap();
    assert_eq!(needs.case, MergeCase::PositiveNeedsResource);
    assert!((needs.conditional_entropy - 1.0).abs() < 1e-12);
    assert!((needs.resource_entropy - 1.0).abs() < 1e-12);

    let gains = merging_ledger(&bell_ab()).unwrap();
    assert_eq!(gains.case, MergeCase::NegativeYieldsResource);
    assert!((gains.conditional_entropy + 1.0).abs() < 1e-12);
    assert!((gains.resource_entropy - 1.0).abs() < 1e-12);
    assert_eq!(gains.resource_spectrum.entries(), &[0.5, 0.5]);

    // GHZ carries Alice/Bob/Charlie tags, so roles are positional
    let ghz = merging_ledger(&builtin::ghz::<f64>()).unwrap();
    assert_eq!(ghz.case, MergeCase::Zero);
    assert_eq!(ghz.resource_entropy, 0.0);
    assert_eq!(ghz.direction, None);
}

#[test]
fn merging_audit_examples() {
    let psi = bell_ab();
    let ledger = merging_ledger(&psi).unwrap();
    // H(ψ^{AB}) = 0, H(ψ^B) = 1: 0 + 1 ≤ 1
    assert!(merging_optimality_audit(&psi, &ledger).unwrap());
    let greedy = forged(MergeCase::NegativeYieldsResource, -1.0, 1.5);
    assert!(!merging_optimality_audit(&psi, &greedy).unwrap());

    let ghz = builtin::ghz::<f64>();
    let ledger = merging_ledger(&ghz).unwrap();
    let roles = MergingRoles::from_layout(ghz.layout()).unwrap();
    let audit = audit_merging(&ghz, &ledger, &roles).unwrap();
    assert!(audit.passes);
    assert!((audit.initial - audit.final_value).abs() < 1e-12);
    assert!((audit.initial - audit.initial_expected).abs() < 1e-12);
}

#[test]
fn positive_case_audit_rejects_short_resource() {
    let psi = bell_ra();
    let ledger = merging_ledger(&psi).unwrap();
    assert!(merging_optimality_audit(&psi, &ledger).unwrap());
    let stingy = forged(MergeCase::PositiveNeedsResource, 1.0, 0.5);
    assert!(!merging_optimality_audit(&psi, &stingy).unwrap());
}

#[test]
fn roles_from_parties_or_positions() {
    let roles = MergingRoles::from_layout(bell_ra().layout()).unwrap();
    assert_eq!(roles.referee, vec!["R"]);
    assert_eq!(roles.bob, vec!["B"]);
    let ghz = builtin::ghz::<f64>();
    let roles = MergingRoles::from_layout(ghz.layout()).unwrap();
    assert_eq!((roles.referee, roles.alice, roles.bob), (vec!["A".to_string()], vec!["B".to_string()], vec!["C".to_string()]));
    let four = SystemLayout::from_parts([("A", 2, Party::Alice), ("B", 2, Party::Bob), ("C", 2, Party::Charlie), ("D", 2, Party::Catalyst)])
        .unwrap();
    assert!(MergingRoles::from_layout(&four).is_err());
}

#[test]
fn distillation_examples() {
    let ghz = distillation_ledger(&builtin::ghz::<f64>()).unwrap();
    assert!((ghz.resource_entropy - 1.0).abs() < 1e-12);
    assert_eq!(ghz.direction, Some(Direction::MergeCToB));
    assert_eq!(ghz.case, MergeCase::Zero);

    let w = distillation_ledger(&builtin::w::<f64>()).unwrap();
    assert!((w.resource_entropy - binary_entropy(1.0 / 3.0)).abs() < 1e-12);
    assert!((w.resource_entropy - 0.918296).abs() < 1e-6);

    let layout = SystemLayout::from_parts([("A", 2, Party::Alice), ("B", 2, Party::Bob), ("C", 2, Party::Charlie)]).unwrap();
    let product = PureState::<f64>::basis(layout, 5).unwrap();
    let ledger = distillation_ledger(&product).unwrap();
    assert_eq!(ledger.resource_entropy, 0.0);
    assert_eq!(ledger.resource_spectrum.entries(), &[1.0]);
}

#[test]
fn distillation_direction_follows_smaller_marginal() {
    // Bell on A,C with B in a product state: H(ψ^A) = 1 > H(ψ^B) = 0
    let layout = SystemLayout::from_parts([("A", 2, Party::Alice), ("B", 2, Party::Bob), ("C", 2, Party::Charlie)]).unwrap();
    let mut amps = [0.0; 8];
    amps[0] = h();
    amps[5] = h();
    let psi = PureState::from_real(layout, &amps).unwrap();
    let ledger: ResourceLedger<f64> = distillation_ledger(&psi).unwrap();
    assert_eq!(ledger.direction, Some(Direction::MergeCToA));
    assert!((ledger.conditional_entropy + 1.0).abs() < 1e-12);
    assert_eq!(ledger.case, MergeCase::NegativeYieldsResource);
    assert_eq!(ledger.resource_entropy, 0.0);
}

#[test]
fn converse_audit_examples() {
    let ghz = builtin::ghz::<f64>();
    assert!(distillation_converse_audit(&ghz, 1.0).unwrap());
    assert!(!distillation_converse_audit(&ghz, 1.1).unwrap());
    let w = builtin::w::<f64>();
    let exact = binary_entropy(1.0 / 3.0);
    assert!(distillation_converse_audit(&w, exact).unwrap());
    assert!(distillation_converse_audit(&w, exact + 5e-10).unwrap());
    assert!(!distillation_converse_audit(&w, exact + 1e-6).unwrap());
}

#[test]
fn ledger_serializes_every_field() {
    let value = distillation_ledger(&builtin::w::<f64>()).unwrap().to_json();
    assert_eq!(value["case"], "zero");
    assert_eq!(value["direction"], "merge_C_to_B");
    assert_eq!(value["resource_spectrum"].as_array().unwrap().len(), 2);
    assert!(value["conditional_entropy"].is_number());
    assert!(value["resource_entropy"].is_number());
    let merging = merging_ledger(&bell_ab()).unwrap().to_json();
    assert!(merging["direction"].is_null());
}
