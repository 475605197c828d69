use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qstate::{DensityOperator, PureState};
use crate::scalar::Real;

use super::construction::{synthetic_construction, Noise};
use super::protocol::{certify_decoupling, run_protocol, ProtocolRunReport};

/// Largest `dim(S)^n · n` a run may allocate unless overridden.
pub const DEFAULT_DIM_CAP: usize = 4096;

pub const SWEEP_HEADER: [&str; 7] =
    ["n", "epsilon", "output_error", "catalyst_deviation", "decoupling_error", "decoupling_bound", "pass"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint<T: Real> {
    pub n: usize,
    pub epsilon: T,
}

#[derive(Clone, Debug)]
pub struct SweepRow<T: Real> {
    pub n: usize,
    pub epsilon: T,
    pub report: ProtocolRunReport<T>,
    pub pass: bool,
}

/// `dim(S)^n · n`, the dimension of `S^{⊗n} ⊗ K`.
pub fn joint_dimension(system_dim: usize, n: usize) -> Option<usize> {
    system_dim.checked_pow(u32::try_from(n).ok()?)?.checked_mul(n)
}

fn monotone<K: PartialOrd>(keys: &[K]) -> bool {
    keys.windows(2).all(|w| w[0] <= w[1]) || keys.windows(2).all(|w| w[0] >= w[1])
}

/// Runs the synthetic family at every point, in input order. The whole list
/// is checked against `dim_cap` before anything runs.
pub fn sweep<T: Real>(
    rho: &DensityOperator<T>,
    phi: &PureState<T>,
    noise: &Noise<T>,
    points: &[SweepPoint<T>],
    dim_cap: usize,
) -> Result<Vec<SweepRow<T>>> {
    let ns: Vec<usize> = points.iter().map(|p| p.n).collect();
    let eps: Vec<T> = points.iter().map(|p| p.epsilon).collect();
    if !monotone(&ns) || !monotone(&eps) {
        return Err(Error::InvalidParameter("sweep parameters must be monotone".into()));
    }
    for p in points {
        let required = joint_dimension(rho.dim(), p.n).unwrap_or(usize::MAX);
        if required > dim_cap {
            return Err(Error::ResourceCap { required, allowed: dim_cap });
        }
    }
    points
        .par_iter()
        .map(|p| {
            let (construction, channel) = synthetic_construction(rho, phi, p.n, p.epsilon, noise)?;
            let report = run_protocol(&construction, &channel)?;
            let pass = certify_decoupling(&report);
            Ok(SweepRow { n: p.n, epsilon: p.epsilon, report, pass })
        })
        .collect()
}

/// Comma-separated table with [`SWEEP_HEADER`]; reals use 12 decimals.
pub fn write_sweep_csv<T: Real, W: Write>(rows: &[SweepRow<T>], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    writer.write_record(SWEEP_HEADER).map_err(io)?;
    for row in rows {
        let r = &row.report;
        writer
            .write_record([
                row.n.to_string(),
                format!("{:.12}", row.epsilon.as_f64()),
                format!("{:.12}", r.output_error.as_f64()),
                format!("{:.12}", r.catalyst_deviation.as_f64()),
                format!("{:.12}", r.decoupling_error.as_f64()),
                format!("{:.12}", r.decoupling_bound.as_f64()),
                (if row.pass { "PASS" } else { "FAIL" }).to_string(),
            ])
            .map_err(io)?;
    }
    writer.flush()?;
    Ok(())
}
