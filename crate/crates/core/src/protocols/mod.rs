//! Entropy ledgers for catalytic state merging and assisted distillation.

mod ledger;
mod spectrum;

pub use ledger::{
    audit_merging, distillation_converse_audit, distillation_ledger, distillation_ledger_with, merging_ledger,
    merging_ledger_with, merging_optimality_audit, Direction, DistillationRoles, MergeCase, MergingAudit, MergingRoles,
    ResourceLedger, ZERO_BAND,
};
pub use spectrum::entropy_to_spectrum;

#[cfg(test)]
mod tests;
