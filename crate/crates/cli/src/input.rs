use std::fs;

use catlab::qstate::{Party, StateFile, Subsystem, SystemLayout};
use catlab::{builtin, random, Error, PureState, Result};

const PARTIES: [(&str, Party); 3] = [("A", Party::Alice), ("B", Party::Bob), ("C", Party::Charlie)];

/// A built-in name, a `random:` shape, or a path to a state file.
pub fn load(source: &str, seed: u64) -> Result<StateFile<f64>> {
    if let Some(state) = builtin::named(source) {
        return Ok(StateFile::Pure(state));
    }
    if let Some(dims) = source.strip_prefix("random:") {
        return random_state(dims, seed).map(StateFile::Pure);
    }
    let text = fs::read_to_string(source).map_err(|e| Error::Io(format!("{source}: {e}")))?;
    StateFile::from_json_str(&text)
}

pub fn load_pure(source: &str, seed: u64) -> Result<PureState> {
    match load(source, seed)? {
        StateFile::Pure(p) => Ok(p),
        StateFile::Density(d) => d.as_pure(),
    }
}

fn random_state(dims: &str, seed: u64) -> Result<PureState> {
    let dims: Vec<usize> = dims
        .split('x')
        .map(|d| d.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse { field: "random".into(), message: e.to_string() })?;
    let parts = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| match PARTIES.get(i) {
            Some(&(label, party)) => Subsystem::new(label, d, party),
            None => Subsystem::new(format!("X{i}"), d, Party::Referee),
        })
        .collect();
    let layout = SystemLayout::new(parts)?;
    Ok(random::pure_state(&layout, &mut random::seeded(seed)))
}

/// `--cut` if given, else Alice's labels, else the first subsystem.
pub fn default_cut(layout: &SystemLayout, cut: &[String]) -> Vec<String> {
    if !cut.is_empty() {
        return cut.to_vec();
    }
    let alice = layout.labels_of(Party::Alice);
    if !alice.is_empty() && alice.len() < layout.len() {
        return alice;
    }
    layout.labels().first().map(|l| vec![l.to_string()]).unwrap_or_default()
}
