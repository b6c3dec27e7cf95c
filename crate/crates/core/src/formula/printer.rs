//! ASCII printer producing minimally parenthesised text that re-parses to the
//! same tree.

use std::fmt::{self, Display, Write};

use super::{HybridFormula, RcFormula};

const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

/// Position context of a subterm. `min` is the loosest binary operator that
/// may appear bare; `tail` says nothing follows the subterm at its level, so
/// a bare `!n . φ` cannot swallow text belonging to an enclosing operator.
#[derive(Clone, Copy)]
struct Ctx {
    min: u8,
    tail: bool,
}

const TOP: Ctx = Ctx { min: 0, tail: true };

trait Printable {
    fn prec(&self) -> u8;
    fn is_down(&self) -> bool {
        false
    }
    fn write_bare(&self, tail: bool, out: &mut String);
}

fn write_in<T: Printable>(f: &T, ctx: Ctx, out: &mut String) {
    let parens = if f.is_down() { !ctx.tail } else { f.prec() < ctx.min };
    if parens {
        out.push('(');
        f.write_bare(true, out);
        out.push(')');
    } else {
        f.write_bare(ctx.tail, out);
    }
}

fn binary<T: Printable>(lhs: &T, op: &str, rhs: &T, (lmin, rmin): (u8, u8), tail: bool, out: &mut String) {
    write_in(lhs, Ctx { min: lmin, tail: false }, out);
    let _ = write!(out, " {op} ");
    write_in(rhs, Ctx { min: rmin, tail }, out);
}

fn unary<T: Printable>(prefix: &str, body: &T, tail: bool, out: &mut String) {
    out.push_str(prefix);
    write_in(body, Ctx { min: PREC_UNARY, tail }, out);
}

const AND: (u8, u8) = (PREC_AND, PREC_UNARY);
const OR: (u8, u8) = (PREC_OR, PREC_AND);
const IMPLIES: (u8, u8) = (PREC_OR, PREC_IMPLIES);

impl Printable for RcFormula {
    fn prec(&self) -> u8 {
        match self {
            RcFormula::Implies(..) => PREC_IMPLIES,
            RcFormula::Or(..) => PREC_OR,
            RcFormula::And(..) => PREC_AND,
            _ => PREC_UNARY,
        }
    }

    fn write_bare(&self, t: bool, out: &mut String) {
        match self {
            RcFormula::Bottom => out.push_str("false"),
            RcFormula::Not(a) if **a == RcFormula::Bottom => out.push_str("true"),
            RcFormula::Prop(p) => out.push_str(p),
            RcFormula::Not(a) => unary("~", &**a, t, out),
            RcFormula::And(a, b) => binary(&**a, "&", &**b, AND, t, out),
            RcFormula::Or(a, b) => binary(&**a, "|", &**b, OR, t, out),
            RcFormula::Implies(a, b) => binary(&**a, "->", &**b, IMPLIES, t, out),
            RcFormula::Diamond(a) => unary("<> ", &**a, t, out),
            RcFormula::Box(a) => unary("[] ", &**a, t, out),
            RcFormula::DynDiamond(k, a) => unary(&format!("<{}> ", k.keyword()), &**a, t, out),
            RcFormula::DynBox(k, a) => unary(&format!("[{}] ", k.keyword()), &**a, t, out),
        }
    }
}

impl Printable for HybridFormula {
    fn prec(&self) -> u8 {
        match self {
            HybridFormula::Or(..) => PREC_OR,
            HybridFormula::And(..) => PREC_AND,
            HybridFormula::Down(..) => 0,
            _ => PREC_UNARY,
        }
    }

    fn is_down(&self) -> bool {
        matches!(self, HybridFormula::Down(..))
    }

    fn write_bare(&self, t: bool, out: &mut String) {
        use HybridFormula as H;
        match self {
            H::Bottom => out.push_str("false"),
            H::Not(a) if **a == H::Bottom => out.push_str("true"),
            H::Prop(p) | H::Nominal(p) => out.push_str(p),
            H::Not(a) => unary("~", &**a, t, out),
            H::And(a, b) => binary(&**a, "&", &**b, AND, t, out),
            H::Or(a, b) => binary(&**a, "|", &**b, OR, t, out),
            H::Diamond(a) => unary("<> ", &**a, t, out),
            H::Box(a) => unary("[] ", &**a, t, out),
            H::Exists(a) => unary("E ", &**a, t, out),
            H::Forall(a) => unary("A ", &**a, t, out),
            H::At(n, a) => unary(&format!("{n}:"), &**a, t, out),
            H::Down(n, a) => {
                let _ = write!(out, "!{n} . ");
                write_in(&**a, TOP, out);
            }
        }
    }
}

impl Display for RcFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_in(self, TOP, &mut out);
        f.write_str(&out)
    }
}

impl Display for HybridFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_in(self, TOP, &mut out);
        f.write_str(&out)
    }
}
