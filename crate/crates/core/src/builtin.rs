//! Named reference states.

use crate::error::{Error, Result};
use crate::qstate::{Party, PureState, SystemLayout};
use crate::scalar::Real;

/// Schmidt spectrum of `jp-psi`.
pub const JP_PSI_SPECTRUM: [f64; 4] = [0.4, 0.4, 0.1, 0.1];
/// Schmidt spectrum of `jp-phi`.
pub const JP_PHI_SPECTRUM: [f64; 3] = [0.5, 0.25, 0.25];

/// Names accepted by [`named`].
pub const NAMES: [&str; 5] = ["bell", "ghz", "w", "jp-psi", "jp-phi"];

fn qubits(parts: &[(&str, Party)]) -> SystemLayout {
    SystemLayout::from_parts(parts.iter().map(|&(l, p)| (l, 2, p))).expect("distinct labels")
}

/// `(|00⟩ + |11⟩)/√2` on `A` (Alice), `B` (Bob).
pub fn bell<T: Real>() -> PureState<T> {
    let h = 0.5f64.sqrt();
    PureState::from_real(qubits(&[("A", Party::Alice), ("B", Party::Bob)]), &[h, 0.0, 0.0, h]).expect("normalized")
}

fn abc() -> SystemLayout {
    qubits(&[("A", Party::Alice), ("B", Party::Bob), ("C", Party::Charlie)])
}

/// `(|000⟩ + |111⟩)/√2` on `A`, `B`, `C`.
pub fn ghz<T: Real>() -> PureState<T> {
    let h = 0.5f64.sqrt();
    let mut amps = [0.0; 8];
    amps[0] = h;
    amps[7] = h;
    PureState::from_real(abc(), &amps).expect("normalized")
}

/// `(|001⟩ + |010⟩ + |100⟩)/√3` on `A`, `B`, `C`.
pub fn w<T: Real>() -> PureState<T> {
    let t = (1.0f64 / 3.0).sqrt();
    let mut amps = [0.0; 8];
    amps[1] = t;
    amps[2] = t;
    amps[4] = t;
    PureState::from_real(abc(), &amps).expect("normalized")
}

/// `Σ_i √p_i |i⟩|i⟩` on `A`, `B` of dimension `d` (zero-padded spectrum).
pub fn from_spectrum<T: Real>(spectrum: &[f64], d: usize) -> Result<PureState<T>> {
    if spectrum.len() > d {
        return Err(Error::InvalidParameter(format!("spectrum of length {} does not fit dimension {d}", spectrum.len())));
    }
    let layout = SystemLayout::from_parts([("A", d, Party::Alice), ("B", d, Party::Bob)])?;
    let mut amps = vec![0.0; d * d];
    for (i, &p) in spectrum.iter().enumerate() {
        if p < 0.0 {
            return Err(Error::InvalidProbability(format!("negative entry {p}")));
        }
        amps[i * d + i] = p.sqrt();
    }
    PureState::from_real(layout, &amps)
}

/// Two ququarts with Schmidt spectrum `(0.4, 0.4, 0.1, 0.1)`.
pub fn jp_psi<T: Real>() -> PureState<T> {
    from_spectrum(&JP_PSI_SPECTRUM, 4).expect("valid spectrum")
}

/// Two ququarts with Schmidt spectrum `(0.5, 0.25, 0.25)`.
pub fn jp_phi<T: Real>() -> PureState<T> {
    from_spectrum(&JP_PHI_SPECTRUM, 4).expect("valid spectrum")
}

pub fn named<T: Real>(name: &str) -> Option<PureState<T>> {
    match name {
        "bell" => Some(bell()),
        "ghz" => Some(ghz()),
        "w" => Some(w()),
        "jp-psi" => Some(jp_psi()),
        "jp-phi" => Some(jp_phi()),
        _ => None,
    }
}
