//! Finite Kripke models, relation updates, frame classes, exhaustive model
//! enumeration and the JSON model file format.

mod enumerate;
mod frames;
mod io;
mod update;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use smallvec::{smallvec, SmallVec};
use thiserror::Error;

pub use enumerate::{
    enumerate_models, enumerate_models_of_size, model_count, EnumerateOptions, PointedModel, MAX_ENUMERATED_STATES,
};
pub(crate) use enumerate::{permutations, ModelSpace};
pub(crate) use frames::classify_relation;
pub use frames::{frame_classify, FrameClass, FrameClassReport};
pub use io::{load_model, parse_model, save_model, LoadedModel, ModelFile};
pub use update::{update, UpdateKind};

/// Dense index of a state in `0..model.len()`.
pub type StateId = usize;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("a model needs at least one state")]
    Empty,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state index {index} out of range for a model with {len} states")]
    StateOutOfRange { index: StateId, len: usize },
    #[error("{kind} precondition violated by pair ({from}, {to})")]
    Precondition { kind: UpdateKind, from: String, to: String },
    #[error("malformed model file: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Invalid(String),
}

/// Accessibility relation over `0..n` stored as an `n × n` bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    // Inline up to 11 states, so updated copies usually avoid the heap.
    words: SmallVec<[u64; 2]>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            words: smallvec![0; (n * n).div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            for j in 0..n {
                r.insert(i, j);
            }
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (StateId, StateId)>) -> Self {
        let mut r = Relation::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    /// Bit `i * n + j` of `mask` encodes the pair `(i, j)`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n * n <= 64);
        let mut r = Relation::empty(n);
        if n > 0 {
            r.words[0] = mask;
        }
        r
    }

    pub fn state_count(&self) -> usize {
        self.n
    }

    #[inline]
    fn bit(&self, a: StateId, b: StateId) -> (usize, u64) {
        debug_assert!(a < self.n && b < self.n);
        let idx = a * self.n + b;
        (idx / 64, 1u64 << (idx % 64))
    }

    #[inline]
    pub fn contains(&self, a: StateId, b: StateId) -> bool {
        let (w, m) = self.bit(a, b);
        self.words[w] & m != 0
    }

    pub fn insert(&mut self, a: StateId, b: StateId) {
        let (w, m) = self.bit(a, b);
        self.words[w] |= m;
    }

    pub fn remove(&mut self, a: StateId, b: StateId) {
        let (w, m) = self.bit(a, b);
        self.words[w] &= !m;
    }

    pub fn with_removed(&self, a: StateId, b: StateId) -> Self {
        let mut r = self.clone();
        r.remove(a, b);
        r
    }

    pub fn with_inserted(&self, a: StateId, b: StateId) -> Self {
        let mut r = self.clone();
        r.insert(a, b);
        r
    }

    /// Turns the edge `(a, b)` around: removes it, then adds `(b, a)`.
    pub fn with_swapped(&self, a: StateId, b: StateId) -> Self {
        let mut r = self.clone();
        r.remove(a, b);
        r.insert(b, a);
        r
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn successors(&self, a: StateId) -> impl Iterator<Item = StateId> + '_ {
        (0..self.n).filter(move |&b| self.contains(a, b))
    }

    pub fn out_degree(&self, a: StateId) -> usize {
        self.successors(a).count()
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        (0..self.n)
            .flat_map(move |a| (0..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.contains(a, b))
    }

    pub fn to_set(&self) -> BTreeSet<(StateId, StateId)> {
        self.pairs().collect()
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// A finite model ⟨W, R, V⟩. States are named for I/O and indexed densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    names: Vec<String>,
    relation: Relation,
    valuation: BTreeMap<String, BTreeSet<StateId>>,
}

impl KripkeModel {
    pub fn new(
        names: Vec<String>,
        relation: Relation,
        valuation: BTreeMap<String, BTreeSet<StateId>>,
    ) -> Result<Self, ModelError> {
        if names.is_empty() {
            return Err(ModelError::Empty);
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(ModelError::DuplicateState(n.clone()));
            }
        }
        if relation.state_count() != names.len() {
            return Err(ModelError::Invalid(format!(
                "relation is over {} states but the model has {}",
                relation.state_count(),
                names.len()
            )));
        }
        for states in valuation.values() {
            if let Some(&s) = states.iter().find(|&&s| s >= names.len()) {
                return Err(ModelError::StateOutOfRange {
                    index: s,
                    len: names.len(),
                });
            }
        }
        Ok(KripkeModel {
            names,
            relation,
            valuation,
        })
    }

    /// Model whose states are named `0`, `1`, … and given by index pairs.
    pub fn from_indices(
        n: usize,
        edges: impl IntoIterator<Item = (StateId, StateId)>,
        valuation: impl IntoIterator<Item = (&'static str, Vec<StateId>)>,
    ) -> Result<Self, ModelError> {
        let edges: Vec<_> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|(a, b)| *a >= n || *b >= n) {
            return Err(ModelError::StateOutOfRange {
                index: a.max(b),
                len: n,
            });
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        let valuation = valuation
            .into_iter()
            .map(|(p, states)| (p.to_string(), states.into_iter().collect()))
            .collect();
        KripkeModel::new(names, Relation::from_pairs(n, edges), valuation)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<StateId>> {
        &self.valuation
    }

    #[inline]
    pub fn holds(&self, prop: &str, s: StateId) -> bool {
        self.valuation.get(prop).is_some_and(|set| set.contains(&s))
    }

    pub fn check_state(&self, s: StateId) -> Result<(), ModelError> {
        if s < self.len() {
            Ok(())
        } else {
            Err(ModelError::StateOutOfRange {
                index: s,
                len: self.len(),
            })
        }
    }

    /// Same states and valuation, different relation.
    pub fn with_relation(&self, relation: Relation) -> KripkeModel {
        assert_eq!(relation.state_count(), self.len());
        KripkeModel {
            names: self.names.clone(),
            relation,
            valuation: self.valuation.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_bit_matrix() {
        let mut r = Relation::empty(9);
        r.insert(8, 8);
        r.insert(0, 7);
        assert!(r.contains(8, 8) && r.contains(0, 7) && !r.contains(7, 0));
        assert_eq!(r.len(), 2);
        assert_eq!(r.pairs().collect::<Vec<_>>(), vec![(0, 7), (8, 8)]);
        r.remove(8, 8);
        assert_eq!(r.len(), 1);
        assert_eq!(r.with_swapped(0, 7).to_set(), BTreeSet::from([(7, 0)]));
    }

    #[test]
    fn mask_layout_is_row_major() {
        let r = Relation::from_mask(2, 0b0110);
        assert_eq!(r.to_set(), BTreeSet::from([(0, 1), (1, 0)]));
    }

    #[test]
    fn model_invariants() {
        assert!(matches!(KripkeModel::from_indices(0, [], []), Err(ModelError::Empty)));
        assert!(KripkeModel::from_indices(2, [(0, 2)], []).is_err());
        assert!(KripkeModel::from_indices(2, [], [("p", vec![5])]).is_err());
        let m = KripkeModel::from_indices(2, [(0, 1)], [("p", vec![1])]).unwrap();
        assert!(m.holds("p", 1) && !m.holds("p", 0) && !m.holds("q", 1));
        assert_eq!(m.state_by_name("1"), Some(1));
    }
}
