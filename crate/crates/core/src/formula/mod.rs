//! Abstract syntax for relation-changing (RC) formulas and for the hybrid
//! target language HL(E, :, ↓), together with their concrete syntax,
//! negation normal form and syntactic metrics.

mod nnf;
mod parser;
mod printer;
mod profile;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use nnf::{is_nnf, to_nnf};
pub use parser::{parse_hybrid, parse_rc, ParseError};
pub use profile::{profile, ModalProfile};

/// The three kinds of relation change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sabotage,
    Bridge,
    Swap,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Sabotage, Family::Bridge, Family::Swap];

    pub fn local(self) -> DynKind {
        match self {
            Family::Sabotage => DynKind::Sb,
            Family::Bridge => DynKind::Br,
            Family::Swap => DynKind::Sw,
        }
    }

    pub fn global(self) -> DynKind {
        match self {
            Family::Sabotage => DynKind::Gsb,
            Family::Bridge => DynKind::Gbr,
            Family::Swap => DynKind::Gsw,
        }
    }

    /// Short CLI name: `sb`, `br` or `sw`.
    pub fn short_name(self) -> &'static str {
        self.local().keyword()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sabotage => "sabotage",
            Family::Bridge => "bridge",
            Family::Swap => "swap",
        })
    }
}

/// One of the six dynamic modalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynKind {
    Sb,
    Gsb,
    Br,
    Gbr,
    Sw,
    Gsw,
}

impl DynKind {
    pub const ALL: [DynKind; 6] = [
        DynKind::Sb,
        DynKind::Gsb,
        DynKind::Br,
        DynKind::Gbr,
        DynKind::Sw,
        DynKind::Gsw,
    ];

    pub fn family(self) -> Family {
        match self {
            DynKind::Sb | DynKind::Gsb => Family::Sabotage,
            DynKind::Br | DynKind::Gbr => Family::Bridge,
            DynKind::Sw | DynKind::Gsw => Family::Swap,
        }
    }

    pub fn is_global(self) -> bool {
        matches!(self, DynKind::Gsb | DynKind::Gbr | DynKind::Gsw)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            DynKind::Sb => "sb",
            DynKind::Gsb => "gsb",
            DynKind::Br => "br",
            DynKind::Gbr => "gbr",
            DynKind::Sw => "sw",
            DynKind::Gsw => "gsw",
        }
    }

    pub fn from_keyword(word: &str) -> Option<DynKind> {
        DynKind::ALL.into_iter().find(|k| k.keyword() == word)
    }
}

/// A relation-changing modal formula.
///
/// `Or`, `Implies`, `Box` and `DynBox` are kept as nodes so that syntactic
/// analyses can tell `[sb]φ` apart from `~<sb>~φ`; semantic operations treat
/// them through the usual dualities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RcFormula {
    Bottom,
    Prop(String),
    Not(Box<RcFormula>),
    And(Box<RcFormula>, Box<RcFormula>),
    Or(Box<RcFormula>, Box<RcFormula>),
    Implies(Box<RcFormula>, Box<RcFormula>),
    Diamond(Box<RcFormula>),
    Box(Box<RcFormula>),
    DynDiamond(DynKind, Box<RcFormula>),
    DynBox(DynKind, Box<RcFormula>),
}

#[allow(clippy::should_implement_trait)]
impl RcFormula {
    pub fn top() -> Self {
        RcFormula::Not(Box::new(RcFormula::Bottom))
    }

    pub fn prop(name: impl Into<String>) -> Self {
        RcFormula::Prop(name.into())
    }

    pub fn not(self) -> Self {
        RcFormula::Not(Box::new(self))
    }

    pub fn and(self, rhs: RcFormula) -> Self {
        RcFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: RcFormula) -> Self {
        RcFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: RcFormula) -> Self {
        RcFormula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn diamond(self) -> Self {
        RcFormula::Diamond(Box::new(self))
    }

    pub fn boxed(self) -> Self {
        RcFormula::Box(Box::new(self))
    }

    pub fn dyn_diamond(kind: DynKind, body: RcFormula) -> Self {
        RcFormula::DynDiamond(kind, Box::new(body))
    }

    pub fn dyn_box(kind: DynKind, body: RcFormula) -> Self {
        RcFormula::DynBox(kind, Box::new(body))
    }

    /// Propositions occurring in the formula, sorted.
    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut BTreeSet<String>) {
        match self {
            RcFormula::Bottom => {}
            RcFormula::Prop(p) => {
                out.insert(p.clone());
            }
            RcFormula::Not(a)
            | RcFormula::Diamond(a)
            | RcFormula::Box(a)
            | RcFormula::DynDiamond(_, a)
            | RcFormula::DynBox(_, a) => a.collect_props(out),
            RcFormula::And(a, b) | RcFormula::Or(a, b) | RcFormula::Implies(a, b) => {
                a.collect_props(out);
                b.collect_props(out);
            }
        }
    }

    /// Conjunction of a non-empty list, associated to the left.
    pub fn conjunction(items: impl IntoIterator<Item = RcFormula>) -> Option<RcFormula> {
        items.into_iter().reduce(RcFormula::and)
    }
}

/// A formula of HL(E, :, ↓).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HybridFormula {
    Bottom,
    Prop(String),
    Nominal(String),
    Not(Box<HybridFormula>),
    And(Box<HybridFormula>, Box<HybridFormula>),
    Or(Box<HybridFormula>, Box<HybridFormula>),
    Diamond(Box<HybridFormula>),
    Box(Box<HybridFormula>),
    /// `n:φ`
    At(String, Box<HybridFormula>),
    /// `↓n.φ`
    Down(String, Box<HybridFormula>),
    Exists(Box<HybridFormula>),
    Forall(Box<HybridFormula>),
}

#[allow(clippy::should_implement_trait)]
impl HybridFormula {
    pub fn top() -> Self {
        HybridFormula::Not(Box::new(HybridFormula::Bottom))
    }

    pub fn prop(name: impl Into<String>) -> Self {
        HybridFormula::Prop(name.into())
    }

    pub fn nominal(name: impl Into<String>) -> Self {
        HybridFormula::Nominal(name.into())
    }

    pub fn not(self) -> Self {
        HybridFormula::Not(Box::new(self))
    }

    pub fn and(self, rhs: HybridFormula) -> Self {
        HybridFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: HybridFormula) -> Self {
        HybridFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn diamond(self) -> Self {
        HybridFormula::Diamond(Box::new(self))
    }

    pub fn boxed(self) -> Self {
        HybridFormula::Box(Box::new(self))
    }

    pub fn at(nominal: impl Into<String>, body: HybridFormula) -> Self {
        HybridFormula::At(nominal.into(), Box::new(body))
    }

    pub fn down(nominal: impl Into<String>, body: HybridFormula) -> Self {
        HybridFormula::Down(nominal.into(), Box::new(body))
    }

    pub fn exists(self) -> Self {
        HybridFormula::Exists(Box::new(self))
    }

    pub fn forall(self) -> Self {
        HybridFormula::Forall(Box::new(self))
    }

    /// Left-associated disjunction; the empty disjunction is `⊥`.
    pub fn disjunction(items: impl IntoIterator<Item = HybridFormula>) -> HybridFormula {
        items
            .into_iter()
            .reduce(HybridFormula::or)
            .unwrap_or(HybridFormula::Bottom)
    }

    /// Left-associated conjunction; the empty conjunction is `⊤`.
    pub fn conjunction(items: impl IntoIterator<Item = HybridFormula>) -> HybridFormula {
        items
            .into_iter()
            .reduce(HybridFormula::and)
            .unwrap_or_else(HybridFormula::top)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        use HybridFormula::*;
        match self {
            Bottom | Prop(_) | Nominal(_) => 1,
            Not(a) | Diamond(a) | Box(a) | At(_, a) | Down(_, a) | Exists(a) | Forall(a) => 1 + a.size(),
            And(a, b) | Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// True if an `E` or `A` node occurs anywhere.
    pub fn uses_universal(&self) -> bool {
        use HybridFormula::*;
        match self {
            Bottom | Prop(_) | Nominal(_) => false,
            Exists(_) | Forall(_) => true,
            Not(a) | Diamond(a) | Box(a) | At(_, a) | Down(_, a) => a.uses_universal(),
            And(a, b) | Or(a, b) => a.uses_universal() || b.uses_universal(),
        }
    }

    /// Every nominal name occurring in the formula (bound, free, or as an
    /// `@` label).
    pub fn nominals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            HybridFormula::Nominal(n) | HybridFormula::At(n, _) | HybridFormula::Down(n, _) => {
                out.insert(n.clone());
            }
            _ => {}
        });
        out
    }

    /// Nominals with an occurrence (as an atom or an `@` label) outside the
    /// scope of a binder for them.
    pub fn free_nominals(&self) -> BTreeSet<String> {
        fn go<'a>(f: &'a HybridFormula, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
            use HybridFormula::*;
            match f {
                Bottom | Prop(_) => {}
                Nominal(n) => {
                    if !bound.contains(&n.as_str()) {
                        out.insert(n.clone());
                    }
                }
                At(n, a) => {
                    if !bound.contains(&n.as_str()) {
                        out.insert(n.clone());
                    }
                    go(a, bound, out);
                }
                Down(n, a) => {
                    bound.push(n);
                    go(a, bound, out);
                    bound.pop();
                }
                Not(a) | Diamond(a) | Box(a) | Exists(a) | Forall(a) => go(a, bound, out),
                And(a, b) | Or(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_nominals().is_empty()
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a HybridFormula)) {
        use HybridFormula::*;
        visit(self);
        match self {
            Bottom | Prop(_) | Nominal(_) => {}
            Not(a) | Diamond(a) | Box(a) | At(_, a) | Down(_, a) | Exists(a) | Forall(a) => a.walk(visit),
            And(a, b) | Or(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    /// Renames bound nominals to `c0, c1, …` in binder pre-order, leaving free
    /// nominals untouched. Two formulas equal up to renaming of bound nominals
    /// have identical canonical forms.
    pub fn canonical_renaming(&self) -> HybridFormula {
        fn go(f: &HybridFormula, scope: &mut Vec<(String, String)>, next: &mut usize) -> HybridFormula {
            use HybridFormula::*;
            let lookup = |scope: &Vec<(String, String)>, n: &String| {
                scope
                    .iter()
                    .rev()
                    .find(|(old, _)| old == n)
                    .map(|(_, new)| new.clone())
                    .unwrap_or_else(|| n.clone())
            };
            match f {
                Bottom => Bottom,
                Prop(p) => Prop(p.clone()),
                Nominal(n) => Nominal(lookup(scope, n)),
                Not(a) => go(a, scope, next).not(),
                Diamond(a) => go(a, scope, next).diamond(),
                Box(a) => go(a, scope, next).boxed(),
                Exists(a) => go(a, scope, next).exists(),
                Forall(a) => go(a, scope, next).forall(),
                At(n, a) => {
                    let label = lookup(scope, n);
                    HybridFormula::at(label, go(a, scope, next))
                }
                Down(n, a) => {
                    let fresh = format!("c{next}");
                    *next += 1;
                    scope.push((n.clone(), fresh.clone()));
                    let body = go(a, scope, next);
                    scope.pop();
                    HybridFormula::down(fresh, body)
                }
                And(a, b) => {
                    let a = go(a, scope, next);
                    a.and(go(b, scope, next))
                }
                Or(a, b) => {
                    let a = go(a, scope, next);
                    a.or(go(b, scope, next))
                }
            }
        }
        go(self, &mut Vec::new(), &mut 0)
    }
}

/// Identifiers of the form `n<digits>` are reserved for nominals.
pub fn is_nominal_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next() == Some('n') && {
        let rest = chars.as_str();
        !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())
    }
}

/// `[A-Za-z][A-Za-z0-9_]*`
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
