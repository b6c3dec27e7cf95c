//! Model checking for HL(E, :, ↓) with an explicit nominal store.

use std::collections::BTreeMap;

use crate::formula::HybridFormula;
use crate::kripke::{KripkeModel, StateId};
use crate::CheckError;

/// The store `g` mapping nominals to states.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NominalAssignment {
    map: BTreeMap<String, StateId>,
}

impl NominalAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every nominal in `nominals` mapped to `w`.
    pub fn uniform<I, S>(nominals: I, w: StateId) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        NominalAssignment {
            map: nominals.into_iter().map(|n| (n.into(), w)).collect(),
        }
    }

    /// `g[n ↦ w]`.
    pub fn bind(&self, nominal: impl Into<String>, w: StateId) -> Self {
        let mut next = self.clone();
        next.map.insert(nominal.into(), w);
        next
    }

    pub fn get(&self, nominal: &str) -> Option<StateId> {
        self.map.get(nominal).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, StateId)> {
        self.map.iter().map(|(n, &s)| (n.as_str(), s))
    }
}

impl From<BTreeMap<String, StateId>> for NominalAssignment {
    fn from(map: BTreeMap<String, StateId>) -> Self {
        NominalAssignment { map }
    }
}

/// `M, g, w ⊨ ψ`. The relation never changes.
pub fn hy_check(
    model: &KripkeModel,
    g: &NominalAssignment,
    w: StateId,
    psi: &HybridFormula,
) -> Result<bool, CheckError> {
    let len = model.len();
    let out_of_range = |index| CheckError::StateOutOfRange { index, len };
    if w >= len {
        return Err(out_of_range(w));
    }
    if let Some((_, s)) = g.iter().find(|&(_, s)| s >= len) {
        return Err(out_of_range(s));
    }
    if let Some(n) = psi.free_nominals().into_iter().find(|n| g.get(n).is_none()) {
        return Err(CheckError::UnassignedNominal(n));
    }
    // Innermost binding last; lookups scan from the end.
    let mut store: Vec<(&str, StateId)> = g.iter().collect();
    Ok(eval(model, &mut store, w, psi))
}

fn lookup(store: &[(&str, StateId)], n: &str) -> StateId {
    store
        .iter()
        .rev()
        .find(|(m, _)| *m == n)
        .map(|&(_, s)| s)
        .expect("free nominals are checked before evaluation")
}

fn eval<'f>(model: &KripkeModel, store: &mut Vec<(&'f str, StateId)>, w: StateId, psi: &'f HybridFormula) -> bool {
    use HybridFormula::*;
    let rel = model.relation();
    match psi {
        Bottom => false,
        Prop(p) => model.holds(p, w),
        Nominal(n) => lookup(store, n) == w,
        Not(a) => !eval(model, store, w, a),
        And(a, b) => eval(model, store, w, a) && eval(model, store, w, b),
        Or(a, b) => eval(model, store, w, a) || eval(model, store, w, b),
        Diamond(a) => rel.successors(w).any(|v| eval(model, store, v, a)),
        Box(a) => rel.successors(w).all(|v| eval(model, store, v, a)),
        At(n, a) => {
            let v = lookup(store, n);
            eval(model, store, v, a)
        }
        Down(n, a) => {
            store.push((n, w));
            let value = eval(model, store, w, a);
            store.pop();
            value
        }
        Exists(a) => model.states().any(|v| eval(model, store, v, a)),
        Forall(a) => model.states().all(|v| eval(model, store, v, a)),
    }
}
