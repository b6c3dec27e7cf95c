//! Translations from relation-changing formulas into HL(E, :, ↓).
//!
//! The recursion carries a list `S` of nominal pairs naming the edges changed
//! so far. Each family has its own clause table for `◇` and its two dynamic
//! operators; `¬`, `∧` and `∨` are homomorphic and every box is handled
//! through its dual diamond. Fresh nominals are drawn as `n0, n1, …` in the
//! order the output is built, left to right.

mod edges;
mod simplify;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{profile, DynKind, Family, HybridFormula, RcFormula};

pub use edges::{belongs, is_sat_edges, EdgeNamePairs, FreshNames};
pub use simplify::{hybrid_nnf, simplify_for_display};

/// A deliberate defect used to show that the equivalence oracle can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Every `¬belongs(n, S)` conjunct becomes `⊤`.
    DropBelongs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslateOptions {
    /// With `S = ∅`, translate `◇φ` as `◇(φ)'`.
    pub optimize_empty: bool,
    /// Inputs nesting more dynamic operators than this are rejected.
    pub max_dynamic_depth: usize,
    pub mutation: Option<Mutation>,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions {
            optimize_empty: true,
            max_dynamic_depth: 8,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("formula uses {found} operators but the {requested} translation was requested")]
    MixedFamily { requested: Family, found: Family },
    #[error("formula nests {depth} dynamic operators, more than the limit of {limit}")]
    DynamicDepthExceeded { depth: usize, limit: usize },
    #[error("{0}")]
    NotApplicable(String),
    #[error("swapped-edge list {0} holds a reflexive or symmetric pair")]
    SwapDiscipline(String),
}

/// `(φ)'_∅` for the given family.
pub fn translate(phi: &RcFormula, family: Family, options: &TranslateOptions) -> Result<HybridFormula, TranslateError> {
    check_input(phi, family, options)?;
    Translator::new(family, *options, false).tr(phi, &EdgeNamePairs::new())
}

/// The binder-economical translation for local sabotage or local swap: the
/// `◇` clause tests the recorded source nominals directly instead of naming
/// the current state.
pub fn translate_eco(phi: &RcFormula, family: Family) -> Result<HybridFormula, TranslateError> {
    translate_eco_with(phi, family, &TranslateOptions::default())
}

/// [`translate_eco`] with explicit options (the depth limit and mutation
/// apply; `optimize_empty` has no effect since the economical clause is
/// already `◇(φ)'` for `S = ∅`).
pub fn translate_eco_with(
    phi: &RcFormula,
    family: Family,
    options: &TranslateOptions,
) -> Result<HybridFormula, TranslateError> {
    if family == Family::Bridge {
        return Err(TranslateError::NotApplicable(
            "the economical translation covers sabotage and swap only".into(),
        ));
    }
    check_input(phi, family, options)?;
    if profile(phi).uses_global {
        return Err(TranslateError::NotApplicable(
            "the economical translation does not cover global operators".into(),
        ));
    }
    Translator::new(family, *options, true).tr(phi, &EdgeNamePairs::new())
}

fn check_input(phi: &RcFormula, family: Family, options: &TranslateOptions) -> Result<(), TranslateError> {
    if let Some(&found) = profile(phi).families.iter().find(|&&f| f != family) {
        return Err(TranslateError::MixedFamily {
            requested: family,
            found,
        });
    }
    let depth = dynamic_depth(phi);
    if depth > options.max_dynamic_depth {
        return Err(TranslateError::DynamicDepthExceeded {
            depth,
            limit: options.max_dynamic_depth,
        });
    }
    Ok(())
}

/// Largest number of nested dynamic operators.
pub fn dynamic_depth(phi: &RcFormula) -> usize {
    use RcFormula::*;
    match phi {
        Bottom | Prop(_) => 0,
        Not(a) | Diamond(a) | Box(a) => dynamic_depth(a),
        And(a, b) | Or(a, b) | Implies(a, b) => dynamic_depth(a).max(dynamic_depth(b)),
        DynDiamond(_, a) | DynBox(_, a) => 1 + dynamic_depth(a),
    }
}

type Out = Result<HybridFormula, TranslateError>;

struct Translator {
    family: Family,
    options: TranslateOptions,
    economical: bool,
    fresh: FreshNames,
}

fn nom(n: &str) -> HybridFormula {
    HybridFormula::nominal(n)
}

impl Translator {
    fn new(family: Family, options: TranslateOptions, economical: bool) -> Self {
        Translator {
            family,
            options,
            economical,
            fresh: FreshNames::new(),
        }
    }

    fn not_belongs(&self, n: &str, s: &EdgeNamePairs) -> HybridFormula {
        match self.options.mutation {
            Some(Mutation::DropBelongs) => HybridFormula::top(),
            None => belongs(n, s).not(),
        }
    }

    fn tr(&mut self, phi: &RcFormula, s: &EdgeNamePairs) -> Out {
        use RcFormula::*;
        if self.family == Family::Swap && !s.is_swap_disciplined() {
            return Err(TranslateError::SwapDiscipline(s.to_string()));
        }
        Ok(match phi {
            Bottom => HybridFormula::Bottom,
            Prop(p) => HybridFormula::prop(p.clone()),
            Not(a) => self.tr(a, s)?.not(),
            And(a, b) => {
                let a = self.tr(a, s)?;
                a.and(self.tr(b, s)?)
            }
            Or(a, b) => {
                let a = self.tr(a, s)?;
                a.or(self.tr(b, s)?)
            }
            Implies(a, b) => {
                let a = self.tr(a, s)?;
                a.not().or(self.tr(b, s)?)
            }
            Box(a) => self.diamond(&a.as_ref().clone().not(), s)?.not(),
            DynBox(kind, a) => self.dynamic(*kind, &a.as_ref().clone().not(), s)?.not(),
            Diamond(a) => self.diamond(a, s)?,
            DynDiamond(kind, a) => self.dynamic(*kind, a, s)?,
        })
    }

    fn diamond(&mut self, phi: &RcFormula, s: &EdgeNamePairs) -> Out {
        if self.economical {
            return self.diamond_economical(phi, s);
        }
        if s.is_empty() && self.options.optimize_empty {
            return Ok(self.tr(phi, s)?.diamond());
        }
        match self.family {
            // ↓n.◇(¬belongs(n,S) ∧ φ')
            Family::Sabotage => {
                let n = self.fresh.fresh();
                let body = self.tr(phi, s)?;
                let guard = self.not_belongs(&n, s);
                Ok(HybridFormula::down(n, guard.and(body).diamond()))
            }
            // ↓n.E↓m.((n:◇m ∨ belongs(n,B)) ∧ φ')
            Family::Bridge => {
                let n = self.fresh.fresh();
                let m = self.fresh.fresh();
                let body = self.tr(phi, s)?;
                let edge = HybridFormula::at(n.clone(), nom(&m).diamond()).or(belongs(&n, s));
                Ok(HybridFormula::down(n, HybridFormula::down(m, edge.and(body)).exists()))
            }
            // ↓n.◇(¬belongs(n,S) ∧ φ') ∨ isSat(S⁻¹, φ')
            Family::Swap => {
                let n = self.fresh.fresh();
                let body = self.tr(phi, s)?;
                let guard = self.not_belongs(&n, s);
                let old = HybridFormula::down(n, guard.and(body.clone()).diamond());
                Ok(old.or(is_sat_edges(&s.inverse(), &body)))
            }
        }
    }

    /// `⋁_{X⊆fst(S)} (⋀_{x∈X} x ∧ ⋀_{x∉X} ¬x ∧ ◇(⋀_{y∈snd(S,X)} ¬y ∧ φ'))`,
    /// subsets in ascending bitmask order, empty conjunctions dropped; swap
    /// adds `∨ isSat(S⁻¹, φ')` when `S` is non-empty.
    fn diamond_economical(&mut self, phi: &RcFormula, s: &EdgeNamePairs) -> Out {
        let body = self.tr(phi, s)?;
        let fst = s.fst();
        let dropped = self.options.mutation == Some(Mutation::DropBelongs);
        let disjuncts = (0u64..1 << fst.len()).map(|mask| {
            let chosen: Vec<&str> = fst
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| *x)
                .collect();
            let mut inner: Vec<HybridFormula> = if dropped {
                Vec::new()
            } else {
                s.snd(&chosen).into_iter().map(|y| nom(y).not()).collect()
            };
            inner.push(body.clone());
            let mut outer: Vec<HybridFormula> = fst
                .iter()
                .map(|x| if chosen.contains(x) { nom(x) } else { nom(x).not() })
                .collect();
            outer.push(HybridFormula::conjunction(inner).diamond());
            HybridFormula::conjunction(outer)
        });
        let mut result = HybridFormula::disjunction(disjuncts);
        if self.family == Family::Swap && !s.is_empty() {
            result = result.or(is_sat_edges(&s.inverse(), &body));
        }
        Ok(result)
    }

    fn dynamic(&mut self, kind: DynKind, phi: &RcFormula, s: &EdgeNamePairs) -> Out {
        match kind {
            // ↓n.◇(¬belongs(n,S) ∧ ↓m.φ'_{S∪nm})
            DynKind::Sb => {
                let n = self.fresh.fresh();
                let m = self.fresh.fresh();
                let body = self.tr(phi, &s.with(n.clone(), m.clone()))?;
                let guard = self.not_belongs(&n, s);
                Ok(HybridFormula::down(
                    n,
                    guard.and(HybridFormula::down(m, body)).diamond(),
                ))
            }
            // ↓k.E↓n.◇(¬belongs(n,S) ∧ ↓m.k:φ'_{S∪nm})
            DynKind::Gsb => {
                let k = self.fresh.fresh();
                let n = self.fresh.fresh();
                let m = self.fresh.fresh();
                let body = self.tr(phi, &s.with(n.clone(), m.clone()))?;
                let guard = self.not_belongs(&n, s);
                let step = guard.and(HybridFormula::down(m, HybridFormula::at(k.clone(), body)));
                Ok(HybridFormula::down(k, HybridFormula::down(n, step.diamond()).exists()))
            }
            // ↓n.E↓m.(¬n:◇m ∧ ¬belongs(n,B) ∧ φ'_{B∪nm})
            DynKind::Br => {
                let n = self.fresh.fresh();
                let m = self.fresh.fresh();
                let body = self.tr(phi, &s.with(n.clone(), m.clone()))?;
                let conj = self.new_edge(&n, &m, s).and(body);
                Ok(HybridFormula::down(n, HybridFormula::down(m, conj).exists()))
            }
            // ↓k.E↓n.E↓m.(¬n:◇m ∧ ¬belongs(n,B) ∧ k:φ'_{B∪nm})
            DynKind::Gbr => {
                let k = self.fresh.fresh();
                let n = self.fresh.fresh();
                let m = self.fresh.fresh();
                let body = self.tr(phi, &s.with(n.clone(), m.clone()))?;
                let conj = self.new_edge(&n, &m, s).and(HybridFormula::at(k.clone(), body));
                Ok(HybridFormula::down(
                    k,
                    HybridFormula::down(n, HybridFormula::down(m, conj).exists()).exists(),
                ))
            }
            DynKind::Sw => {
                // (↓n.◇n ∧ φ'_S)
                let n = self.fresh.fresh();
                let reflexive = HybridFormula::down(n.clone(), nom(&n).diamond()).and(self.tr(phi, s)?);
                // ↓n.◇(¬n ∧ ¬belongs(n,S) ∧ ¬belongs(n,S⁻¹) ∧ ↓m.φ'_{S∪nm})
                let n = self.fresh.fresh();
                let m = self.fresh.fresh();
                let body = self.tr(phi, &s.with(n.clone(), m.clone()))?;
                let step = self.fresh_swap(&n, s).and(HybridFormula::down(m, body));
                let fresh = HybridFormula::down(n, step.diamond());
                // ⋁_{xy∈S} (y ∧ x:φ'_{(S\xy)∪yx})
                let mut back = Vec::new();
                for (x, y) in s.iter() {
                    let body = self.tr(phi, &s.reswapped(x, y))?;
                    back.push(nom(y).and(HybridFormula::at(x.clone(), body)));
                }
                Ok(HybridFormula::disjunction([reflexive, fresh].into_iter().chain(back)))
            }
            DynKind::Gsw => {
                // (E↓n.◇n ∧ φ'_S)
                let n = self.fresh.fresh();
                let reflexive = HybridFormula::down(n.clone(), nom(&n).diamond())
                    .exists()
                    .and(self.tr(phi, s)?);
                // ↓k.E↓n.◇(¬n ∧ ¬belongs(n,S) ∧ ¬belongs(n,S⁻¹) ∧ ↓m.k:φ'_{S∪nm})
                let k = self.fresh.fresh();
                let n = self.fresh.fresh();
                let m = self.fresh.fresh();
                let body = self.tr(phi, &s.with(n.clone(), m.clone()))?;
                let step = self
                    .fresh_swap(&n, s)
                    .and(HybridFormula::down(m, HybridFormula::at(k.clone(), body)));
                let fresh = HybridFormula::down(k, HybridFormula::down(n, step.diamond()).exists());
                // ⋁_{xy∈S} φ'_{(S\xy)∪yx}
                let mut back = Vec::new();
                for (x, y) in s.iter() {
                    back.push(self.tr(phi, &s.reswapped(x, y))?);
                }
                Ok(HybridFormula::disjunction([reflexive, fresh].into_iter().chain(back)))
            }
        }
    }

    /// `¬n:◇m ∧ ¬belongs(n,B)`.
    fn new_edge(&self, n: &str, m: &str, b: &EdgeNamePairs) -> HybridFormula {
        HybridFormula::at(n, nom(m).diamond()).not().and(self.not_belongs(n, b))
    }

    /// `¬n ∧ ¬belongs(n,S) ∧ ¬belongs(n,S⁻¹)`.
    fn fresh_swap(&self, n: &str, s: &EdgeNamePairs) -> HybridFormula {
        nom(n)
            .not()
            .and(self.not_belongs(n, s))
            .and(self.not_belongs(n, &s.inverse()))
    }
}
