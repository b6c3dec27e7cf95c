//! Syntactic check for the decidable fragments of local sabotage and local
//! swap.
//!
//! Each modal operator of an NNF formula stands for a pattern in its
//! economical translation: `□ ↦ □`, `⟨sb⟩/⟨sw⟩ ↦ ↓`, `[sb]/[sw] ↦ ↓□↓`.
//! `◇` contributes nothing since its economical clause has no binder. A
//! formula is in the fragment when no nesting path carries `□`, `↓`, `□` as
//! a (not necessarily contiguous) subsequence. Boolean connectives only split
//! paths.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{profile, to_nnf, DynKind, Family, HybridFormula, RcFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    Box,
    Down,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Token::Box => "□",
            Token::Down => "↓",
        })
    }
}

/// Renders a token string such as `↓□↓`.
pub fn render_tokens(tokens: &[Token]) -> String {
    tokens.iter().map(Token::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fragment analysis covers local sabotage and local swap only")]
pub struct NotApplicable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FragmentReport {
    pub applicable: bool,
    pub in_fragment: bool,
    /// Modal operators from the root down to where the forbidden pattern
    /// completes, e.g. `["[sb]", "[sb]"]`.
    pub witness_path: Option<Vec<String>>,
}

fn applicable(phi: &RcFormula) -> bool {
    let prof = profile(phi);
    !prof.uses_global
        && prof
            .families
            .iter()
            .all(|f| matches!(f, Family::Sabotage | Family::Swap))
        && prof.families.len() <= 1
}

fn tokens_of(f: &RcFormula) -> &'static [Token] {
    match f {
        RcFormula::Box(_) => &[Token::Box],
        RcFormula::DynDiamond(..) => &[Token::Down],
        RcFormula::DynBox(..) => &[Token::Down, Token::Box, Token::Down],
        _ => &[],
    }
}

/// Token string of every root-to-leaf path of `phi`, which must be in NNF.
pub fn pattern_tokens(phi: &RcFormula) -> Result<Vec<Vec<Token>>, NotApplicable> {
    fn go(f: &RcFormula, prefix: &mut Vec<Token>, out: &mut Vec<Vec<Token>>) {
        use RcFormula::*;
        let len = prefix.len();
        prefix.extend_from_slice(tokens_of(f));
        match f {
            Bottom | Prop(_) => out.push(prefix.clone()),
            Not(a) | Diamond(a) | Box(a) | DynDiamond(_, a) | DynBox(_, a) => go(a, prefix, out),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                go(a, prefix, out);
                go(b, prefix, out);
            }
        }
        prefix.truncate(len);
    }
    if !applicable(phi) {
        return Err(NotApplicable);
    }
    let mut out = Vec::new();
    go(phi, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Progress through the pattern `□ … ↓ … □`: 0 nothing, 1 `□`, 2 `□↓`, 3 done.
fn advance(state: u8, token: Token) -> u8 {
    match (state, token) {
        (0, Token::Box) => 1,
        (1, Token::Down) => 2,
        (2, Token::Box) => 3,
        (s, _) => s,
    }
}

/// Whether a token string contains `□`, `↓`, `□` as a subsequence.
pub fn has_box_down_box(tokens: &[Token]) -> bool {
    tokens.iter().fold(0, |s, &t| advance(s, t)) == 3
}

fn op_label(f: &RcFormula) -> Option<String> {
    match f {
        RcFormula::Diamond(_) => Some("<>".into()),
        RcFormula::Box(_) => Some("[]".into()),
        RcFormula::DynDiamond(k, _) => Some(format!("<{}>", k.keyword())),
        RcFormula::DynBox(k, _) => Some(format!("[{}]", k.keyword())),
        _ => None,
    }
}

pub fn fragment_check(phi: &RcFormula) -> FragmentReport {
    fn go(f: &RcFormula, state: u8, chain: &mut Vec<String>) -> Option<Vec<String>> {
        use RcFormula::*;
        let state = tokens_of(f).iter().fold(state, |s, &t| advance(s, t));
        let pushed = op_label(f).map(|l| chain.push(l)).is_some();
        let found = if state == 3 {
            Some(chain.clone())
        } else {
            match f {
                Bottom | Prop(_) => None,
                Not(a) | Diamond(a) | Box(a) | DynDiamond(_, a) | DynBox(_, a) => go(a, state, chain),
                And(a, b) | Or(a, b) | Implies(a, b) => go(a, state, chain).or_else(|| go(b, state, chain)),
            }
        };
        if pushed {
            chain.pop();
        }
        found
    }
    if !applicable(phi) {
        return FragmentReport {
            applicable: false,
            in_fragment: false,
            witness_path: None,
        };
    }
    let witness = go(&to_nnf(phi), 0, &mut Vec::new());
    FragmentReport {
        applicable: true,
        in_fragment: witness.is_none(),
        witness_path: witness,
    }
}

/// Whether some path of a hybrid formula nests `□`, `↓`, `□`. Meant for
/// formulas in negation normal form.
pub fn hybrid_has_box_down_box(psi: &HybridFormula) -> bool {
    fn go(f: &HybridFormula, state: u8) -> bool {
        use HybridFormula::*;
        let state = match f {
            Box(_) => advance(state, Token::Box),
            Down(..) => advance(state, Token::Down),
            _ => state,
        };
        state == 3
            || match f {
                Bottom | Prop(_) | Nominal(_) => false,
                Not(a) | Diamond(a) | Box(a) | At(_, a) | Down(_, a) | Exists(a) | Forall(a) => go(a, state),
                And(a, b) | Or(a, b) => go(a, state) || go(b, state),
            }
    }
    go(psi, 0)
}

/// The nesting shapes used by the exhaustive battery: `□`, a local dynamic
/// diamond and a local dynamic box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nesting {
    Box,
    DynDiamond,
    DynBox,
}

impl Nesting {
    pub const ALL: [Nesting; 3] = [Nesting::Box, Nesting::DynDiamond, Nesting::DynBox];

    pub fn symbol(self) -> char {
        match self {
            Nesting::Box => '□',
            Nesting::DynDiamond => '◆',
            Nesting::DynBox => '■',
        }
    }
}

/// `o₁ o₂ … oₖ p` with the dynamic operators taken from `kind`.
pub fn nesting_formula(ops: &[Nesting], kind: DynKind) -> RcFormula {
    ops.iter().rev().fold(RcFormula::prop("p"), |f, op| match op {
        Nesting::Box => f.boxed(),
        Nesting::DynDiamond => RcFormula::dyn_diamond(kind, f),
        Nesting::DynBox => RcFormula::dyn_box(kind, f),
    })
}

/// The forbidden list as stated for the fragments: `■■`, `■□`, `□■` and
/// `b₁◆b₂` with `b₁, b₂ ∈ {□, ■}`, matched as contiguous factors.
pub fn matches_forbidden_list(ops: &[Nesting]) -> bool {
    use Nesting::*;
    let boxy = |o: Nesting| matches!(o, Box | DynBox);
    ops.windows(2)
        .any(|w| matches!((w[0], w[1]), (DynBox, DynBox) | (DynBox, Box) | (Box, DynBox)))
        || ops.windows(3).any(|w| boxy(w[0]) && w[1] == DynDiamond && boxy(w[2]))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::formula::parse_rc;
    use crate::rc_semantics::tests::arb_formula;
    use crate::translator::{hybrid_nnf, translate_eco};

    fn rc(s: &str) -> RcFormula {
        parse_rc(s).unwrap()
    }

    fn tokens(s: &str) -> Vec<String> {
        pattern_tokens(&to_nnf(&rc(s)))
            .unwrap()
            .iter()
            .map(|t| render_tokens(t))
            .collect()
    }

    #[test]
    fn token_table() {
        assert_eq!(tokens("[sb][sb] p"), vec!["↓□↓↓□↓"]);
        assert_eq!(tokens("[] <sb> [] p"), vec!["□↓□"]);
        assert_eq!(tokens("<sw> <sw> p"), vec!["↓↓"]);
        assert_eq!(tokens("<sw> <sw> <> <> p"), vec!["↓↓"]);
        assert_eq!(tokens("[] p & <sb> q"), vec!["□", "↓"]);
        assert_eq!(pattern_tokens(&rc("<br> p")), Err(NotApplicable));
    }

    #[test]
    fn published_examples() {
        let r = fragment_check(&rc("[sb][sb] p"));
        assert!(r.applicable && !r.in_fragment);
        assert_eq!(r.witness_path, Some(vec!["[sb]".to_string(), "[sb]".to_string()]));
        let r = fragment_check(&rc("[] <sb> [] p"));
        assert!(!r.in_fragment);
        assert_eq!(r.witness_path.unwrap().join(" "), "[] <sb> []");
        assert!(fragment_check(&rc("<sw> <sw> <> <> p")).in_fragment);
        assert!(fragment_check(&rc("[] [] p")).in_fragment);
    }

    #[test]
    fn not_applicable_inputs() {
        for s in ["<br> p", "<gsb> p", "<sb> <sw> p", "[gsw] p"] {
            let r = fragment_check(&rc(s));
            assert!(!r.applicable && r.witness_path.is_none(), "{s}");
        }
    }

    #[test]
    fn negation_is_pushed_before_matching() {
        // ~<sb>~ is a dynamic box.
        assert!(!fragment_check(&rc("~<sb>~[] p & [] true")).in_fragment);
        assert!(fragment_check(&rc("~[sb] [] p")).in_fragment);
    }

    #[test]
    fn subsequence_rule_matches_the_list_on_short_nestings() {
        for kind in [DynKind::Sb, DynKind::Sw] {
            for len in 1..=3 {
                for code in 0..3usize.pow(len as u32) {
                    let ops: Vec<Nesting> = (0..len)
                        .map(|i| Nesting::ALL[code / 3usize.pow(i as u32) % 3])
                        .collect();
                    let report = fragment_check(&nesting_formula(&ops, kind));
                    assert_eq!(!report.in_fragment, matches_forbidden_list(&ops), "{ops:?}");
                }
            }
        }
    }

    fn wrap(f: RcFormula, which: u8) -> RcFormula {
        match which % 5 {
            0 => f.diamond(),
            1 => f.boxed(),
            2 => RcFormula::dyn_diamond(DynKind::Sb, f),
            3 => RcFormula::dyn_box(DynKind::Sb, f),
            _ => f.and(RcFormula::prop("q")),
        }
    }

    proptest! {
        #[test]
        fn out_is_preserved_under_context(f in arb_formula(vec![DynKind::Sb], 4), ctx in proptest::collection::vec(any::<u8>(), 0..4)) {
            if !fragment_check(&f).in_fragment {
                let g = ctx.iter().fold(f, |g, &c| wrap(g, c));
                prop_assert!(!fragment_check(&g).in_fragment);
            }
        }

        #[test]
        fn stable_under_nnf(f in arb_formula(vec![DynKind::Sw], 4)) {
            prop_assert_eq!(fragment_check(&f), fragment_check(&to_nnf(&f)));
        }

        #[test]
        fn agrees_with_the_economical_translation(
            sb in arb_formula(vec![DynKind::Sb], 4),
            sw in arb_formula(vec![DynKind::Sw], 3),
        ) {
            for (f, family) in [(sb, Family::Sabotage), (sw, Family::Swap)] {
                let hybrid = hybrid_nnf(&translate_eco(&f, family).unwrap());
                prop_assert_eq!(fragment_check(&f).in_fragment, !hybrid_has_box_down_box(&hybrid), "{}", f);
            }
        }
    }
}
