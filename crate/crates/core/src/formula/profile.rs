use std::collections::BTreeSet;

use serde::Serialize;

use super::{Family, RcFormula};

/// Purely syntactic summary of an RC formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModalProfile {
    /// Number of AST nodes.
    pub size: usize,
    /// Maximum nesting of modal operators, dynamic ones included.
    pub modal_depth: usize,
    pub families: BTreeSet<Family>,
    /// No global dynamic operator occurs.
    pub local_only: bool,
    pub uses_global: bool,
}

impl ModalProfile {
    /// The only family occurring, if exactly one does.
    pub fn single_family(&self) -> Option<Family> {
        match self.families.len() {
            1 => self.families.iter().next().copied(),
            _ => None,
        }
    }

    pub fn is_pure_for(&self, family: Family) -> bool {
        self.families.iter().all(|f| *f == family)
    }
}

pub fn profile(f: &RcFormula) -> ModalProfile {
    let mut p = ModalProfile {
        size: 0,
        modal_depth: 0,
        families: BTreeSet::new(),
        local_only: true,
        uses_global: false,
    };
    p.modal_depth = walk(f, &mut p);
    p.local_only = !p.uses_global;
    p
}

fn walk(f: &RcFormula, p: &mut ModalProfile) -> usize {
    use RcFormula::*;
    p.size += 1;
    match f {
        Bottom | Prop(_) => 0,
        Not(a) => walk(a, p),
        And(a, b) | Or(a, b) | Implies(a, b) => walk(a, p).max(walk(b, p)),
        Diamond(a) | Box(a) => 1 + walk(a, p),
        DynDiamond(k, a) | DynBox(k, a) => {
            p.families.insert(k.family());
            p.uses_global |= k.is_global();
            1 + walk(a, p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_rc;

    fn prof(text: &str) -> ModalProfile {
        profile(&parse_rc(text).unwrap())
    }

    #[test]
    fn sabotage_diamond() {
        let p = prof("<sb> <> p");
        assert_eq!(p.size, 3);
        assert_eq!(p.modal_depth, 2);
        assert_eq!(p.families, BTreeSet::from([Family::Sabotage]));
        assert!(p.local_only && !p.uses_global);
    }

    #[test]
    fn global_swap() {
        let p = prof("<gsw> <sw> p");
        assert_eq!(p.families, BTreeSet::from([Family::Swap]));
        assert!(p.uses_global && !p.local_only);
        assert_eq!(p.single_family(), Some(Family::Swap));
    }

    #[test]
    fn mixed_families() {
        let p = prof("<sb> <br> p");
        assert_eq!(p.families, BTreeSet::from([Family::Sabotage, Family::Bridge]));
        assert_eq!(p.single_family(), None);
    }

    #[test]
    fn basic_modal() {
        let p = prof("p & ([] q | ~<> r)");
        assert_eq!(p.size, 8);
        assert_eq!(p.modal_depth, 1);
        assert!(p.families.is_empty());
        assert!(p.is_pure_for(Family::Bridge));
    }
}
