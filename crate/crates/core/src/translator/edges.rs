use std::fmt;

use crate::formula::HybridFormula;

/// Ordered set of nominal pairs `(x, y)` naming edges that have been removed
/// (sabotage), added (bridge) or turned around (swap, where `(x, y)` names
/// the original edge `x → y`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeNamePairs {
    pairs: Vec<(String, String)>,
}

impl EdgeNamePairs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, String)> {
        self.pairs.iter()
    }

    pub fn contains(&self, x: &str, y: &str) -> bool {
        self.pairs.iter().any(|(a, b)| a == x && b == y)
    }

    /// `S ∪ {xy}`, appended at the end.
    pub fn with(&self, x: impl Into<String>, y: impl Into<String>) -> Self {
        let mut next = self.clone();
        let (x, y) = (x.into(), y.into());
        if !next.contains(&x, &y) {
            next.pairs.push((x, y));
        }
        next
    }

    /// `(S \ {xy}) ∪ {yx}`.
    pub fn reswapped(&self, x: &str, y: &str) -> Self {
        let mut next = EdgeNamePairs {
            pairs: self
                .pairs
                .iter()
                .filter(|(a, b)| !(a == x && b == y))
                .cloned()
                .collect(),
        };
        next.pairs.push((y.to_string(), x.to_string()));
        next
    }

    /// `S⁻¹`, in the same order.
    pub fn inverse(&self) -> Self {
        EdgeNamePairs {
            pairs: self.pairs.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// `fst(S)` without repetitions, in list order.
    pub fn fst(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for (x, _) in &self.pairs {
            if !out.contains(&x.as_str()) {
                out.push(x);
            }
        }
        out
    }

    /// `snd(S, X)` without repetitions, in list order.
    pub fn snd<'a>(&'a self, xs: &[&str]) -> Vec<&'a str> {
        let mut out: Vec<&str> = Vec::new();
        for (x, y) in &self.pairs {
            if xs.contains(&x.as_str()) && !out.contains(&y.as_str()) {
                out.push(y);
            }
        }
        out
    }

    /// No reflexive pair and no pair together with its inverse.
    pub fn is_swap_disciplined(&self) -> bool {
        self.pairs.iter().all(|(x, y)| x != y && !self.contains(y, x))
    }
}

impl FromIterator<(String, String)> for EdgeNamePairs {
    fn from_iter<I: IntoIterator<Item = (String, String)>>(iter: I) -> Self {
        let mut out = EdgeNamePairs::new();
        for (x, y) in iter {
            out = out.with(x, y);
        }
        out
    }
}

impl fmt::Display for EdgeNamePairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}{y}")?;
        }
        f.write_str("}")
    }
}

/// Fresh nominals `n0, n1, …` for one translation.
#[derive(Debug, Clone, Default)]
pub struct FreshNames {
    next: usize,
}

impl FreshNames {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self) -> String {
        let name = format!("n{}", self.next);
        self.next += 1;
        name
    }

    /// Number of names handed out so far.
    pub fn issued(&self) -> usize {
        self.next
    }
}

/// `⋁_{(x,y)∈S} (y ∧ n:x)`: the current state is the target of a recorded
/// edge whose source is named `n`. Empty `S` gives `⊥`.
pub fn belongs(n: &str, s: &EdgeNamePairs) -> HybridFormula {
    HybridFormula::disjunction(
        s.iter().map(|(x, y)| {
            HybridFormula::nominal(y.clone()).and(HybridFormula::at(n, HybridFormula::nominal(x.clone())))
        }),
    )
}

/// `⋁_{(x,y)∈T} (x ∧ y:ψ)`. Empty `T` gives `⊥`.
pub fn is_sat_edges(t: &EdgeNamePairs, psi: &HybridFormula) -> HybridFormula {
    HybridFormula::disjunction(
        t.iter()
            .map(|(x, y)| HybridFormula::nominal(x.clone()).and(HybridFormula::at(y.clone(), psi.clone()))),
    )
}
