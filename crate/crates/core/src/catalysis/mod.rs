//! Finite-`n` catalyst construction, the three-step catalytic protocol, and
//! its certificates.

mod construction;
mod protocol;
mod sweep;

pub use construction::{
    build_catalyst, copy_label, copy_labels, copy_layout, make_synthetic_gamma, mixing_weight, preparation_channel,
    synthetic_construction, CatalystConstruction, Noise, REGISTER_LABEL,
};
pub use protocol::{certify_decoupling, run_protocol, run_protocol_traced, ProtocolRunReport, ProtocolTrace, CERTIFICATE_SLACK};
pub use sweep::{joint_dimension, sweep, write_sweep_csv, SweepPoint, SweepRow, DEFAULT_DIM_CAP, SWEEP_HEADER};
