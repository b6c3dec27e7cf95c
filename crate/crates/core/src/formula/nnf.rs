use super::RcFormula;

/// Negation normal form: negations only on propositions and `⊥`,
/// implications eliminated, boxes introduced by the dualities.
pub fn to_nnf(f: &RcFormula) -> RcFormula {
    nnf(f, false)
}

fn nnf(f: &RcFormula, negate: bool) -> RcFormula {
    use RcFormula::*;
    match (f, negate) {
        (Bottom, false) => Bottom,
        (Bottom, true) => RcFormula::top(),
        (Prop(p), false) => Prop(p.clone()),
        (Prop(p), true) => Prop(p.clone()).not(),
        (Not(a), _) => nnf(a, !negate),
        (And(a, b), false) => nnf(a, false).and(nnf(b, false)),
        (And(a, b), true) => nnf(a, true).or(nnf(b, true)),
        (Or(a, b), false) => nnf(a, false).or(nnf(b, false)),
        (Or(a, b), true) => nnf(a, true).and(nnf(b, true)),
        (Implies(a, b), false) => nnf(a, true).or(nnf(b, false)),
        (Implies(a, b), true) => nnf(a, false).and(nnf(b, true)),
        (Diamond(a), false) => nnf(a, false).diamond(),
        (Diamond(a), true) => nnf(a, true).boxed(),
        (Box(a), false) => nnf(a, false).boxed(),
        (Box(a), true) => nnf(a, true).diamond(),
        (DynDiamond(k, a), false) => RcFormula::dyn_diamond(*k, nnf(a, false)),
        (DynDiamond(k, a), true) => RcFormula::dyn_box(*k, nnf(a, true)),
        (DynBox(k, a), false) => RcFormula::dyn_box(*k, nnf(a, false)),
        (DynBox(k, a), true) => RcFormula::dyn_diamond(*k, nnf(a, true)),
    }
}

/// True when every negation sits on a proposition or `⊥` and no implication
/// occurs.
pub fn is_nnf(f: &RcFormula) -> bool {
    use RcFormula::*;
    match f {
        Bottom | Prop(_) => true,
        Not(a) => matches!(**a, Prop(_) | Bottom),
        Implies(..) => false,
        And(a, b) | Or(a, b) => is_nnf(a) && is_nnf(b),
        Diamond(a) | Box(a) | DynDiamond(_, a) | DynBox(_, a) => is_nnf(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_rc;

    fn nnf_of(text: &str) -> RcFormula {
        to_nnf(&parse_rc(text).unwrap())
    }

    #[test]
    fn dualities() {
        assert_eq!(nnf_of("~<sb> p"), parse_rc("[sb] ~p").unwrap());
        assert_eq!(nnf_of("~(p & <> q)"), parse_rc("~p | [] ~q").unwrap());
        assert_eq!(nnf_of("~~p"), parse_rc("p").unwrap());
        assert_eq!(nnf_of("~[gbr] true"), parse_rc("<gbr> false").unwrap());
    }

    #[test]
    fn sabotage_example_pushes_implication() {
        assert_eq!(nnf_of("[sb](A -> [][]~A)"), parse_rc("[sb](~A | [][]~A)").unwrap());
    }

    #[test]
    fn output_is_nnf() {
        let f = nnf_of("~((p -> <sw> q) & ~[gsw](p | ~q))");
        assert!(is_nnf(&f));
        assert!(!is_nnf(&parse_rc("~<> p").unwrap()));
    }
}
