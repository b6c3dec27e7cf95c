//! Bounded satisfiability search over exhaustively enumerated models, and the
//! harness comparing the model checkers through the translations.

mod generator;
mod oracle;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::formula::RcFormula;
use crate::kripke::{classify_relation, permutations, ModelSpace};
use crate::kripke::{EnumerateOptions, FrameClass, KripkeModel, Relation, StateId, MAX_ENUMERATED_STATES};
use crate::rc_semantics::{rc_check_parts, Valuation};

pub use generator::FormulaGenerator;
pub use oracle::{oracle_compare, Disagreement, OracleParams, OracleReport, TranslationKind};

#[derive(Debug, Clone)]
pub struct SatOptions {
    /// Sizes `1..=max_states` are tried in turn.
    pub max_states: usize,
    pub frame_class: Option<FrameClass>,
    /// Wall-clock limit for the whole search.
    pub budget: Option<Duration>,
    pub enumerate: EnumerateOptions,
}

impl Default for SatOptions {
    fn default() -> Self {
        SatOptions {
            max_states: 4,
            frame_class: None,
            budget: None,
            enumerate: EnumerateOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    /// The first satisfying pointed model in enumeration order.
    Found {
        model: KripkeModel,
        point: StateId,
        examined: u64,
    },
    /// No model with at most `max_states` states satisfies the formula.
    Exhausted { examined: u64 },
    /// The budget ran out; `completed_states` is the largest size fully
    /// searched (0 if none).
    Timeout { examined: u64, completed_states: usize },
}

impl SatOutcome {
    pub fn examined(&self) -> u64 {
        match self {
            SatOutcome::Found { examined, .. }
            | SatOutcome::Exhausted { examined }
            | SatOutcome::Timeout { examined, .. } => *examined,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("max_states must be between 1 and {MAX_ENUMERATED_STATES}, got {0}")]
    Bound(usize),
}

/// Valuation given by the bitmask layout of the model enumeration: bit
/// `p * k + s` puts state `s` in the `p`-th proposition.
struct MaskValuation<'a> {
    props: &'a [String],
    k: usize,
    mask: u64,
}

impl Valuation for MaskValuation<'_> {
    fn holds(&self, prop: &str, s: StateId) -> bool {
        match self.props.iter().position(|p| p == prop) {
            Some(i) => self.mask >> (i * self.k + s) & 1 == 1,
            None => false,
        }
    }
}

enum Hit {
    Found { rel: u64, val: u64, point: StateId },
    Timeout,
}

/// Searches models of `1, 2, …, max_states` states over the propositions of
/// `phi` for a pointed model satisfying it. Relation masks are split across
/// worker threads; the result is the first hit in enumeration order.
pub fn sat_bounded(phi: &RcFormula, options: &SatOptions) -> Result<SatOutcome, SatError> {
    if !(1..=MAX_ENUMERATED_STATES).contains(&options.max_states) {
        return Err(SatError::Bound(options.max_states));
    }
    let start = Instant::now();
    let deadline = options.budget.map(|b| start + b);
    let props = phi.props();
    let examined = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let timed_out = || {
        stop.load(Ordering::Relaxed)
            || deadline.is_some_and(|d| {
                let late = Instant::now() >= d;
                if late {
                    stop.store(true, Ordering::Relaxed);
                }
                late
            })
    };

    for k in 1..=options.max_states {
        let space = ModelSpace::new(k, &props);
        let perms = if options.enumerate.prune_isomorphic {
            permutations(k)
        } else {
            Vec::new()
        };
        let hit = (0..space.relation_count()).into_par_iter().find_map_first(|rel| {
            if timed_out() {
                return Some(Hit::Timeout);
            }
            let relation = Relation::from_mask(k, rel);
            if let Some(class) = options.frame_class {
                if !class.admits(&classify_relation(&relation)) {
                    return None;
                }
            }
            let mut count = 0;
            let mut result = None;
            'scan: for val in 0..space.valuation_count() {
                if val % 64 == 63 && timed_out() {
                    result = Some(Hit::Timeout);
                    break;
                }
                let valuation = MaskValuation {
                    props: &space.props,
                    k,
                    mask: val,
                };
                for point in 0..k {
                    if options.enumerate.prune_isomorphic && !space.is_canonical(rel, val, point, &perms) {
                        continue;
                    }
                    count += 1;
                    if rc_check_parts(&valuation, &relation, point, phi) {
                        result = Some(Hit::Found { rel, val, point });
                        break 'scan;
                    }
                }
            }
            examined.fetch_add(count, Ordering::Relaxed);
            result
        });
        let examined = examined.load(Ordering::Relaxed);
        match hit {
            Some(Hit::Found { rel, val, point }) => {
                return Ok(SatOutcome::Found {
                    model: space.model(rel, val),
                    point,
                    examined,
                })
            }
            Some(Hit::Timeout) => {
                return Ok(SatOutcome::Timeout {
                    examined,
                    completed_states: k - 1,
                })
            }
            None => {}
        }
    }
    Ok(SatOutcome::Exhausted {
        examined: examined.load(Ordering::Relaxed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_rc;
    use crate::kripke::frame_classify;
    use crate::rc_semantics::rc_check;

    fn rc(s: &str) -> RcFormula {
        parse_rc(s).unwrap()
    }

    fn sat(s: &str, max_states: usize) -> SatOutcome {
        sat_bounded(
            &rc(s),
            &SatOptions {
                max_states,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn global_bridge_on_the_first_model() {
        match sat("<gbr> true", 1) {
            SatOutcome::Found { model, point, examined } => {
                assert_eq!(model.len(), 1);
                assert!(model.relation().is_empty());
                assert_eq!((point, examined), (0, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradiction_is_exhausted() {
        assert!(matches!(sat("[] false & <> true", 4), SatOutcome::Exhausted { .. }));
    }

    #[test]
    fn found_models_satisfy_the_formula() {
        for s in ["<sb> <sb> p & ~p", "<sw> <> <> p & [] ~p", "[gbr] <> true & ~<> true"] {
            match sat(s, 3) {
                SatOutcome::Found { model, point, .. } => assert!(rc_check(&model, point, &rc(s)).unwrap(), "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }

    #[test]
    fn first_hit_is_canonical() {
        // The smallest model with a successor is the single loop.
        match sat("<> true", 3) {
            SatOutcome::Found { model, .. } => {
                assert_eq!(model.len(), 1);
                assert!(model.relation().contains(0, 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn frame_class_restricts_the_search() {
        let phi = rc("<> <> true");
        for class in [
            FrameClass::Linear,
            FrameClass::TransitiveTree,
            FrameClass::S5,
            FrameClass::Complete,
        ] {
            let out = sat_bounded(
                &phi,
                &SatOptions {
                    max_states: 3,
                    frame_class: Some(class),
                    ..Default::default()
                },
            )
            .unwrap();
            match out {
                SatOutcome::Found { model, .. } => assert!(class.admits(&frame_classify(&model)), "{class}"),
                other => panic!("{class}: {other:?}"),
            }
        }
    }

    #[test]
    fn pruning_keeps_verdicts() {
        for s in ["<sb> <sb> p & ~p", "[] false & <> true", "<gsw> <> p & ~<> p"] {
            let plain = sat(s, 3);
            let pruned = sat_bounded(
                &rc(s),
                &SatOptions {
                    max_states: 3,
                    enumerate: EnumerateOptions { prune_isomorphic: true },
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(
                matches!(plain, SatOutcome::Found { .. }),
                matches!(pruned, SatOutcome::Found { .. }),
                "{s}"
            );
            assert!(pruned.examined() <= plain.examined());
        }
    }

    #[test]
    fn zero_budget_times_out() {
        let out = sat_bounded(
            &rc("[] false & <> true"),
            &SatOptions {
                max_states: 4,
                budget: Some(Duration::ZERO),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(matches!(out, SatOutcome::Timeout { .. }));
    }

    #[test]
    fn bound_is_checked() {
        assert_eq!(
            sat_bounded(
                &RcFormula::top(),
                &SatOptions {
                    max_states: 0,
                    ..Default::default()
                }
            ),
            Err(SatError::Bound(0))
        );
        assert!(sat_bounded(
            &RcFormula::top(),
            &SatOptions {
                max_states: 9,
                ..Default::default()
            }
        )
        .is_err());
    }
}
