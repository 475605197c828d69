//! Dense finite-dimensional states and operators.

mod channel;
mod density;
mod io;
mod kernel;
mod layout;
mod pure;
mod purify;
mod schmidt;

pub use channel::QuantumChannel;
pub use density::{DensityOperator, MeasurementOutcome, ZERO_PROBABILITY};
pub use io::StateFile;
pub use layout::{Party, Subsystem, SystemLayout};
pub use pure::PureState;
pub use purify::reference_label;
pub use schmidt::{split_cut, SchmidtDecomposition};
