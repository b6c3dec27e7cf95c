//! Seeded random formulas for the equivalence oracle.
//!
//! The generator is specified bit-exactly so that any implementation can
//! reproduce a suite from its seed.
//!
//! PRNG: SplitMix64. The state `x` starts at the seed; each draw sets
//! `x ← x + 0x9e3779b97f4a7c15` (wrapping) and returns `mix(x)` with
//!
//! ```text
//! z = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9
//! z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//! mix(x) = z ^ (z >> 31)
//! ```
//!
//! A choice among `n` options is `draw() % n`. One generator instance is
//! used for a whole suite; formula `i` is the `i`-th call of
//! [`FormulaGenerator::formula`].
//!
//! `formula()` calls `gen(depth, depth + 2)`, where `gen(m, h)` is:
//!
//! 1. If `h = 0`, return an atom.
//! 2. Otherwise build the constructor list, in this order:
//!    `atom, ¬, ∧, ∨`; if `m > 0` append `◇, □, ⟨local⟩, [local]`; if `m > 0`
//!    and global operators are enabled append `⟨global⟩, [global]`. Draw one.
//! 3. `¬` recurses with `gen(m, h - 1)`; `∧` and `∨` recurse left then
//!    right, each with `gen(m, h - 1)`; every modal constructor recurses
//!    with `gen(m - 1, h - 1)`.
//!
//! An atom is a draw among `p`, `⊤`, `⊥` in that order, where `⊤` is `¬⊥`.
//! `m` bounds the modal depth (all six dynamic operators count); `h` bounds
//! the height of the tree.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::formula::{DynKind, Family, RcFormula};

pub struct FormulaGenerator {
    rng: SplitMix64,
    depth: usize,
    local: DynKind,
    global: Option<DynKind>,
}

impl FormulaGenerator {
    /// Formulas of modal depth at most `depth` using the operators of
    /// `family`; the global operator is left out when `local_only` is set.
    pub fn new(seed: u64, family: Family, depth: usize, local_only: bool) -> Self {
        FormulaGenerator {
            rng: SplitMix64::seed_from_u64(seed),
            depth,
            local: family.local(),
            global: (!local_only).then(|| family.global()),
        }
    }

    fn pick(&mut self, n: usize) -> usize {
        (self.rng.next_u64() % n as u64) as usize
    }

    pub fn formula(&mut self) -> RcFormula {
        self.gen(self.depth, self.depth + 2)
    }

    fn atom(&mut self) -> RcFormula {
        match self.pick(3) {
            0 => RcFormula::prop("p"),
            1 => RcFormula::top(),
            _ => RcFormula::Bottom,
        }
    }

    fn gen(&mut self, modal: usize, height: usize) -> RcFormula {
        if height == 0 {
            return self.atom();
        }
        let choices = match (modal > 0, self.global.is_some()) {
            (false, _) => 4,
            (true, false) => 8,
            (true, true) => 10,
        };
        let (m, h) = (modal.saturating_sub(1), height - 1);
        match self.pick(choices) {
            0 => self.atom(),
            1 => self.gen(modal, h).not(),
            2 => {
                let a = self.gen(modal, h);
                a.and(self.gen(modal, h))
            }
            3 => {
                let a = self.gen(modal, h);
                a.or(self.gen(modal, h))
            }
            4 => self.gen(m, h).diamond(),
            5 => self.gen(m, h).boxed(),
            6 => RcFormula::dyn_diamond(self.local, self.gen(m, h)),
            7 => RcFormula::dyn_box(self.local, self.gen(m, h)),
            8 => RcFormula::dyn_diamond(self.global.unwrap(), self.gen(m, h)),
            _ => RcFormula::dyn_box(self.global.unwrap(), self.gen(m, h)),
        }
    }
}

impl Iterator for FormulaGenerator {
    type Item = RcFormula;

    fn next(&mut self) -> Option<RcFormula> {
        Some(self.formula())
    }
}
