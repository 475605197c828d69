//! Entropies, distances and majorization.

mod distance;
mod entropy;
mod probability;

pub use distance::{fidelity, fidelity_with_pure, fuchs_van_de_graaf_gap, trace_distance};
pub use entropy::{
    conditional_entropy, conditional_entropy_pure, entanglement_entropy, marginal_entropy, pure_marginal_entropy,
    squashed_entanglement_pure, von_neumann_entropy, Entropy, PURITY_THRESHOLD,
};
pub use probability::{
    majorization_violation, majorizes, shannon_entropy, ProbabilityVector, MAJORIZATION_TOLERANCE,
};
