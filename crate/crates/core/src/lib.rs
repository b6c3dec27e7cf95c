//! Relation-changing modal logics (sabotage, bridge and swap, each in a local
//! and a global variant), their translations into hybrid logic with binders,
//! and the tooling used to check those translations: two model checkers,
//! exhaustive small-model enumeration and a bounded satisfiability search.

pub mod formula;
pub mod fragments;
pub mod hybrid_semantics;
pub mod kripke;
pub mod rc_semantics;
pub mod satsearch;
pub mod translator;

use thiserror::Error;

pub use formula::{parse_hybrid, parse_rc, DynKind, Family, HybridFormula, RcFormula};
pub use hybrid_semantics::{hy_check, NominalAssignment};
pub use kripke::{KripkeModel, Relation, StateId};
pub use rc_semantics::{rc_check, rc_check_traced, TraceStep};

/// Errors raised by the model checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("state index {index} out of range for a model with {len} states")]
    StateOutOfRange { index: StateId, len: usize },
    #[error("nominal `{0}` has no assigned state")]
    UnassignedNominal(String),
}
