use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which party holds a subsystem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Party {
    Alice,
    Bob,
    Referee,
    Charlie,
    Catalyst,
    Register,
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
            Party::Referee => "referee",
            Party::Charlie => "charlie",
            Party::Catalyst => "catalyst",
            Party::Register => "register",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
    pub party: Party,
}

impl Subsystem {
    pub fn new(label: impl Into<String>, dim: usize, party: Party) -> Self {
        Self { label: label.into(), dim, party }
    }
}

/// Ordered registry of subsystems. The joint Hilbert space is the tensor
/// product in this order, indexed row-major (first subsystem slowest).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SystemLayout {
    subsystems: Vec<Subsystem>,
}

impl SystemLayout {
    pub fn new(subsystems: Vec<Subsystem>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &subsystems {
            if s.dim == 0 {
                return Err(Error::InvalidLayout(format!("subsystem `{}` has dimension 0", s.label)));
            }
            if !seen.insert(s.label.as_str()) {
                return Err(Error::LabelCollision(s.label.clone()));
            }
        }
        Ok(Self { subsystems })
    }

    /// Layout with no subsystems; its Hilbert space is one-dimensional.
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Convenience constructor from `(label, dim, party)` triples.
    pub fn from_parts<S: Into<String>>(parts: impl IntoIterator<Item = (S, usize, Party)>) -> Result<Self> {
        Self::new(parts.into_iter().map(|(l, d, p)| Subsystem::new(l, d, p)).collect())
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subsystems.iter().map(|s| s.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim).product()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.subsystems.iter().map(|s| s.label.as_str()).collect()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.subsystems
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.subsystems.iter().any(|s| s.label == label)
    }

    pub fn get(&self, label: &str) -> Result<&Subsystem> {
        Ok(&self.subsystems[self.position(label)?])
    }

    /// Positions of `labels`, in the order given. Rejects unknown and repeated labels.
    pub fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let p = self.position(l.as_ref())?;
            if out.contains(&p) {
                return Err(Error::LabelCollision(l.as_ref().to_string()));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// Product of the dimensions of `labels`.
    pub fn dim_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        Ok(self.positions(labels)?.iter().map(|&p| self.subsystems[p].dim).product())
    }

    /// Concatenation `self ⊗ other`.
    pub fn concat(&self, other: &SystemLayout) -> Result<Self> {
        let mut subsystems = self.subsystems.clone();
        subsystems.extend(other.subsystems.iter().cloned());
        Self::new(subsystems)
    }

    /// Sub-layout made of the given positions, in the given order.
    pub fn select(&self, positions: &[usize]) -> Self {
        Self { subsystems: positions.iter().map(|&p| self.subsystems[p].clone()).collect() }
    }

    /// Labels not in `labels`, in layout order.
    pub fn complement<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<String>> {
        let taken = self.positions(labels)?;
        Ok((0..self.len())
            .filter(|p| !taken.contains(p))
            .map(|p| self.subsystems[p].label.clone())
            .collect())
    }

    /// Labels held by `party`, in layout order.
    pub fn labels_of(&self, party: Party) -> Vec<String> {
        self.subsystems.iter().filter(|s| s.party == party).map(|s| s.label.clone()).collect()
    }

    /// Same layout with every label rewritten by `f`.
    pub fn map_labels(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        Self::new(
            self.subsystems
                .iter()
                .map(|s| Subsystem::new(f(&s.label), s.dim, s.party))
                .collect(),
        )
    }

    /// Same layout with every party replaced.
    pub fn with_party(&self, party: Party) -> Self {
        Self {
            subsystems: self.subsystems.iter().map(|s| Subsystem::new(s.label.clone(), s.dim, party)).collect(),
        }
    }

    /// True when both layouts have identical dimension sequences.
    pub fn same_shape(&self, other: &SystemLayout) -> bool {
        self.dims() == other.dims()
    }

    /// For every joint index, the index into the subsystems at `positions`
    /// (ordered as given) and into the remaining subsystems (layout order).
    pub(crate) fn split_indices(&self, positions: &[usize]) -> IndexSplit {
        let dims = self.dims();
        let total = self.total_dim();
        let rest: Vec<usize> = (0..dims.len()).filter(|p| !positions.contains(p)).collect();
        let sel_dim: usize = positions.iter().map(|&p| dims[p]).product();
        let rest_dim: usize = rest.iter().map(|&p| dims[p]).product();
        let mut selected = vec![0; total];
        let mut remaining = vec![0; total];
        let mut compose = vec![0; total];
        let mut digits = vec![0usize; dims.len()];
        for x in 0..total {
            let mut s = 0;
            for &p in positions {
                s = s * dims[p] + digits[p];
            }
            let mut r = 0;
            for &p in &rest {
                r = r * dims[p] + digits[p];
            }
            selected[x] = s;
            remaining[x] = r;
            compose[s * rest_dim + r] = x;
            // advance the row-major odometer
            for p in (0..dims.len()).rev() {
                digits[p] += 1;
                if digits[p] < dims[p] {
                    break;
                }
                digits[p] = 0;
            }
        }
        IndexSplit { selected, remaining, compose, sel_dim, rest_dim }
    }

    /// Joint index of the state obtained by reordering subsystems so that
    /// position `i` of the result holds old position `order[i]`: returns, for
    /// every new index, the old index it reads from.
    pub(crate) fn reorder_map(&self, order: &[usize]) -> Vec<usize> {
        let split = self.split_indices(order);
        // all positions selected, so `selected` is the new index of each old index
        let mut map = vec![0; self.total_dim()];
        for (old, &new) in split.selected.iter().enumerate() {
            map[new] = old;
        }
        map
    }
}

impl fmt::Display for SystemLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .subsystems
            .iter()
            .map(|s| format!("{}[{}:{}]", s.label, s.dim, s.party))
            .collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

pub(crate) struct IndexSplit {
    pub selected: Vec<usize>,
    pub remaining: Vec<usize>,
    /// `compose[s * rest_dim + r]` is the joint index with parts `(s, r)`.
    pub compose: Vec<usize>,
    pub sel_dim: usize,
    pub rest_dim: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> SystemLayout {
        SystemLayout::from_parts([("A", 2, Party::Alice), ("B", 3, Party::Bob), ("C", 2, Party::Charlie)]).unwrap()
    }

    #[test]
    fn rejects_duplicates_and_zero_dims() {
        assert_eq!(
            SystemLayout::from_parts([("A", 2, Party::Alice), ("A", 2, Party::Bob)]),
            Err(Error::LabelCollision("A".into()))
        );
        assert!(SystemLayout::from_parts([("A", 0, Party::Alice)]).is_err());
    }

    #[test]
    fn total_dimension_is_product() {
        assert_eq!(abc().total_dim(), 12);
        assert_eq!(SystemLayout::trivial().total_dim(), 1);
    }

    #[test]
    fn split_indices_round_trip() {
        let l = abc();
        let split = l.split_indices(&[2, 0]);
        assert_eq!(split.sel_dim, 4);
        assert_eq!(split.rest_dim, 3);
        for x in 0..12 {
            assert_eq!(split.compose[split.selected[x] * split.rest_dim + split.remaining[x]], x);
        }
        // x = (a=1, b=2, c=1) = 1*6 + 2*2 + 1 = 11 -> selected (c, a) = (1, 1) = 3
        assert_eq!(split.selected[11], 3);
        assert_eq!(split.remaining[11], 2);
    }

    #[test]
    fn complement_keeps_layout_order() {
        assert_eq!(abc().complement(&["B"]).unwrap(), vec!["A".to_string(), "C".to_string()]);
        assert!(abc().complement(&["Z"]).is_err());
    }
}
