use crate::formula::HybridFormula;

/// Negation normal form for hybrid formulas. `↓n` and `n:` are self-dual,
/// `E` and `A` are each other's dual; negations stop at propositions,
/// nominals and `⊥`.
pub fn hybrid_nnf(f: &HybridFormula) -> HybridFormula {
    nnf(f, false)
}

fn nnf(f: &HybridFormula, negate: bool) -> HybridFormula {
    use HybridFormula::*;
    let literal = |f: HybridFormula| if negate { f.not() } else { f };
    match f {
        Bottom => literal(Bottom),
        Prop(_) | Nominal(_) => literal(f.clone()),
        Not(a) => nnf(a, !negate),
        And(a, b) if negate => nnf(a, true).or(nnf(b, true)),
        And(a, b) => nnf(a, false).and(nnf(b, false)),
        Or(a, b) if negate => nnf(a, true).and(nnf(b, true)),
        Or(a, b) => nnf(a, false).or(nnf(b, false)),
        Diamond(a) if negate => nnf(a, true).boxed(),
        Diamond(a) => nnf(a, false).diamond(),
        Box(a) if negate => nnf(a, true).diamond(),
        Box(a) => nnf(a, false).boxed(),
        Exists(a) if negate => nnf(a, true).forall(),
        Exists(a) => nnf(a, false).exists(),
        Forall(a) if negate => nnf(a, true).exists(),
        Forall(a) => nnf(a, false).forall(),
        At(n, a) => HybridFormula::at(n.clone(), nnf(a, negate)),
        Down(n, a) => HybridFormula::down(n.clone(), nnf(a, negate)),
    }
}

/// Display form of a translation: [`hybrid_nnf`], then `⊤ ∧ ψ`, `ψ ∧ ⊤`,
/// `⊥ ∨ ψ` and `ψ ∨ ⊥` reduced to `ψ`, bottom-up.
pub fn simplify_for_display(f: &HybridFormula) -> HybridFormula {
    units(&hybrid_nnf(f))
}

fn is_top(f: &HybridFormula) -> bool {
    matches!(f, HybridFormula::Not(a) if **a == HybridFormula::Bottom)
}

fn units(f: &HybridFormula) -> HybridFormula {
    use HybridFormula::*;
    match f {
        Bottom | Prop(_) | Nominal(_) => f.clone(),
        Not(a) => match units(a) {
            Not(b) => *b,
            a => a.not(),
        },
        And(a, b) => match (units(a), units(b)) {
            (a, b) if is_top(&a) => b,
            (a, b) if is_top(&b) => a,
            (a, b) => a.and(b),
        },
        Or(a, b) => match (units(a), units(b)) {
            (Bottom, b) => b,
            (a, Bottom) => a,
            (a, b) => a.or(b),
        },
        Diamond(a) => units(a).diamond(),
        Box(a) => units(a).boxed(),
        Exists(a) => units(a).exists(),
        Forall(a) => units(a).forall(),
        At(n, a) => HybridFormula::at(n.clone(), units(a)),
        Down(n, a) => HybridFormula::down(n.clone(), units(a)),
    }
}
