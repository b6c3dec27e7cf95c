//! Direct model checking of relation-changing formulas.
//!
//! Every dynamic step builds a fresh [`Relation`] value, so nested updates
//! never alias. Candidates are tried in ascending order (row-major for the
//! global operators), which makes traces reproducible.

use serde::Serialize;

use crate::formula::{DynKind, RcFormula};
use crate::kripke::{KripkeModel, Relation, StateId};
use crate::CheckError;

/// One dynamic step on the deciding branch of an evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Operator keyword, e.g. `sb` or `gsw`.
    pub operator: &'static str,
    /// The pair removed, added or turned around.
    pub edge: (StateId, StateId),
    /// State at which evaluation continues.
    pub next: StateId,
}

/// `M, w ⊨ φ`.
pub fn rc_check(model: &KripkeModel, w: StateId, phi: &RcFormula) -> Result<bool, CheckError> {
    check_state(model, w)?;
    let mut tracer = Tracer::default();
    Ok(eval(model, model.relation(), w, phi, &mut tracer))
}

/// Like [`rc_check`], also returning the dynamic steps the verdict hinges on:
/// the witness edges of true dynamic diamonds and the refuting edges of false
/// dynamic boxes.
pub fn rc_check_traced(model: &KripkeModel, w: StateId, phi: &RcFormula) -> Result<(bool, Vec<TraceStep>), CheckError> {
    check_state(model, w)?;
    let mut tracer = Tracer {
        enabled: true,
        steps: Vec::new(),
    };
    let value = eval(model, model.relation(), w, phi, &mut tracer);
    Ok((value, tracer.steps))
}

/// Truth of propositions at states, separate from the relation so that
/// callers scanning many valuations need not build a model for each.
pub trait Valuation {
    fn holds(&self, prop: &str, s: StateId) -> bool;
}

impl Valuation for KripkeModel {
    fn holds(&self, prop: &str, s: StateId) -> bool {
        KripkeModel::holds(self, prop, s)
    }
}

/// `⟨W, rel, val⟩, w ⊨ φ` for a relation and valuation given separately.
/// `w` must be a state of `rel`.
pub fn rc_check_parts<V: Valuation + ?Sized>(val: &V, rel: &Relation, w: StateId, phi: &RcFormula) -> bool {
    assert!(w < rel.state_count(), "state {w} out of range");
    eval(val, rel, w, phi, &mut Tracer::default())
}

fn check_state(model: &KripkeModel, w: StateId) -> Result<(), CheckError> {
    if w < model.len() {
        Ok(())
    } else {
        Err(CheckError::StateOutOfRange {
            index: w,
            len: model.len(),
        })
    }
}

#[derive(Default)]
struct Tracer {
    enabled: bool,
    steps: Vec<TraceStep>,
}

impl Tracer {
    fn mark(&self) -> usize {
        self.steps.len()
    }

    fn push(&mut self, kind: DynKind, edge: (StateId, StateId), next: StateId) {
        if self.enabled {
            self.steps.push(TraceStep {
                operator: kind.keyword(),
                edge,
                next,
            });
        }
    }

    fn reset(&mut self, mark: usize) {
        self.steps.truncate(mark);
    }
}

/// The updated relations reachable by one step of `kind` from `w`, as
/// `(edge, relation, next state)`.
fn successors<'a>(
    rel: &'a Relation,
    w: StateId,
    kind: DynKind,
) -> Box<dyn Iterator<Item = ((StateId, StateId), Relation, StateId)> + 'a> {
    let n = rel.state_count();
    let all = move || (0..n).flat_map(move |v| (0..n).map(move |u| (v, u)));
    match kind {
        DynKind::Sb => Box::new(rel.successors(w).map(move |v| ((w, v), rel.with_removed(w, v), v))),
        DynKind::Br => Box::new(
            (0..n)
                .filter(move |&v| !rel.contains(w, v))
                .map(move |v| ((w, v), rel.with_inserted(w, v), v)),
        ),
        DynKind::Sw => Box::new(rel.successors(w).map(move |v| ((w, v), rel.with_swapped(w, v), v))),
        DynKind::Gsb => Box::new(rel.pairs().map(move |(v, u)| ((v, u), rel.with_removed(v, u), w))),
        DynKind::Gbr => Box::new(
            all()
                .filter(move |&(v, u)| !rel.contains(v, u))
                .map(move |(v, u)| ((v, u), rel.with_inserted(v, u), w)),
        ),
        DynKind::Gsw => Box::new(rel.pairs().map(move |(v, u)| ((v, u), rel.with_swapped(v, u), w))),
    }
}

fn eval<V: Valuation + ?Sized>(model: &V, rel: &Relation, w: StateId, phi: &RcFormula, t: &mut Tracer) -> bool {
    match phi {
        RcFormula::Bottom => false,
        RcFormula::Prop(p) => model.holds(p, w),
        RcFormula::Not(a) => !eval(model, rel, w, a, t),
        RcFormula::And(a, b) => {
            let mark = t.mark();
            if !eval(model, rel, w, a, t) {
                return false;
            }
            let mid = t.mark();
            let value = eval(model, rel, w, b, t);
            if !value {
                t.steps.drain(mark..mid);
            }
            value
        }
        RcFormula::Or(a, b) => {
            let mark = t.mark();
            if eval(model, rel, w, a, t) {
                return true;
            }
            t.reset(mark);
            eval(model, rel, w, b, t)
        }
        RcFormula::Implies(a, b) => {
            let mark = t.mark();
            if !eval(model, rel, w, a, t) {
                return true;
            }
            t.reset(mark);
            eval(model, rel, w, b, t)
        }
        RcFormula::Diamond(a) => rel.successors(w).any(|v| {
            let mark = t.mark();
            let value = eval(model, rel, v, a, t);
            if !value {
                t.reset(mark);
            }
            value
        }),
        RcFormula::Box(a) => rel.successors(w).all(|v| {
            let mark = t.mark();
            let value = eval(model, rel, v, a, t);
            if value {
                t.reset(mark);
            }
            value
        }),
        RcFormula::DynDiamond(kind, a) => successors(rel, w, *kind).any(|(edge, next_rel, next)| {
            let mark = t.mark();
            t.push(*kind, edge, next);
            let value = eval(model, &next_rel, next, a, t);
            if !value {
                t.reset(mark);
            }
            value
        }),
        RcFormula::DynBox(kind, a) => successors(rel, w, *kind).all(|(edge, next_rel, next)| {
            let mark = t.mark();
            t.push(*kind, edge, next);
            let value = eval(model, &next_rel, next, a, t);
            if value {
                t.reset(mark);
            }
            value
        }),
    }
}
