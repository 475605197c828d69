//! Numerical laboratory for catalytic entanglement transformations.
//!
//! Dense states and channels over named subsystems ([`qstate`]), entropies
//! and distances ([`measures`]), majorization and catalyst search
//! ([`locc`]), the finite-`n` catalytic protocol with its certificates
//! ([`catalysis`]), and resource ledgers for merging and assisted
//! distillation ([`protocols`]). Everything is generic over [`Real`]; the
//! aliases below fix the scalar type.

pub mod builtin;
pub mod catalysis;
pub mod error;
pub mod linalg;
pub mod locc;
pub mod measures;
pub mod protocols;
pub mod qstate;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type PureState = qstate::PureState<f64>;
pub type DensityOperator = qstate::DensityOperator<f64>;
pub type QuantumChannel = qstate::QuantumChannel<f64>;
pub type SchmidtDecomposition = qstate::SchmidtDecomposition<f64>;
pub type ProbabilityVector = measures::ProbabilityVector<f64>;
pub type CatalystConstruction = catalysis::CatalystConstruction<f64>;
pub type ProtocolRunReport = catalysis::ProtocolRunReport<f64>;
pub type ResourceLedger = protocols::ResourceLedger<f64>;

pub type PureState32 = qstate::PureState<f32>;
pub type DensityOperator32 = qstate::DensityOperator<f32>;
pub type QuantumChannel32 = qstate::QuantumChannel<f32>;
pub type ProbabilityVector32 = measures::ProbabilityVector<f32>;
pub type ProtocolRunReport32 = catalysis::ProtocolRunReport<f32>;

pub use qstate::{Party, Subsystem, SystemLayout};
