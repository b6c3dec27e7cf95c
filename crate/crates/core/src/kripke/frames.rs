use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{KripkeModel, Relation};

/// Frame properties of a model's relation.
///
/// "Transitive tree" is read as: `R` is transitive and irreflexive, and its
/// immediate-successor relation `R \ (R∘R)` is a rooted tree whose transitive
/// closure is `R`. `width` is the largest out-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrameClassReport {
    pub complete: bool,
    pub s5: bool,
    pub linear: bool,
    pub transitive_tree: bool,
    pub width: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameClass {
    Complete,
    S5,
    Linear,
    TransitiveTree,
    /// Every state has at most this many successors.
    Width(usize),
}

impl FrameClass {
    pub fn admits(self, report: &FrameClassReport) -> bool {
        match self {
            FrameClass::Complete => report.complete,
            FrameClass::S5 => report.s5,
            FrameClass::Linear => report.linear,
            FrameClass::TransitiveTree => report.transitive_tree,
            FrameClass::Width(k) => report.width <= k,
        }
    }
}

impl FromStr for FrameClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complete" => Ok(FrameClass::Complete),
            "s5" => Ok(FrameClass::S5),
            "linear" => Ok(FrameClass::Linear),
            "tree" => Ok(FrameClass::TransitiveTree),
            _ => match s.strip_prefix("width:").map(str::parse) {
                Some(Ok(k)) => Ok(FrameClass::Width(k)),
                _ => Err(format!(
                    "unknown frame class `{s}` (expected complete, s5, linear, tree or width:N)"
                )),
            },
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameClass::Complete => f.write_str("complete"),
            FrameClass::S5 => f.write_str("s5"),
            FrameClass::Linear => f.write_str("linear"),
            FrameClass::TransitiveTree => f.write_str("tree"),
            FrameClass::Width(k) => write!(f, "width:{k}"),
        }
    }
}

pub fn frame_classify(model: &KripkeModel) -> FrameClassReport {
    classify_relation(model.relation())
}

pub(crate) fn classify_relation(r: &Relation) -> FrameClassReport {
    let n = r.state_count();
    let all = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    let reflexive = (0..n).all(|a| r.contains(a, a));
    let irreflexive = (0..n).all(|a| !r.contains(a, a));
    let symmetric = r.pairs().all(|(a, b)| r.contains(b, a));
    let transitive = r.pairs().all(|(a, b)| r.successors(b).all(|c| r.contains(a, c)));
    let trichotomous = all().all(|(a, b)| a == b || r.contains(a, b) || r.contains(b, a));

    FrameClassReport {
        complete: r.len() == n * n,
        s5: reflexive && symmetric && transitive,
        linear: irreflexive && transitive && trichotomous,
        transitive_tree: transitive && irreflexive && is_tree_closure(r),
        width: (0..n).map(|a| r.out_degree(a)).max().unwrap_or(0),
    }
}

/// `R_im = R \ (R∘R)` forms a rooted tree and its transitive closure is `R`.
fn is_tree_closure(r: &Relation) -> bool {
    let n = r.state_count();
    let mut immediate = Relation::empty(n);
    for (a, b) in r.pairs() {
        let composite = r.successors(a).any(|c| r.contains(c, b));
        if !composite {
            immediate.insert(a, b);
        }
    }
    let parents: Vec<usize> = (0..n)
        .map(|b| (0..n).filter(|&a| immediate.contains(a, b)).count())
        .collect();
    let roots: Vec<usize> = (0..n).filter(|&b| parents[b] == 0).collect();
    if roots.len() != 1 || parents.iter().any(|&p| p > 1) {
        return false;
    }
    // Reachability from the root along R_im, and closure(R_im) = R.
    let mut closure = Relation::empty(n);
    for start in 0..n {
        let mut stack: Vec<usize> = immediate.successors(start).collect();
        while let Some(v) = stack.pop() {
            if !closure.contains(start, v) {
                closure.insert(start, v);
                stack.extend(immediate.successors(v));
            }
        }
    }
    let root = roots[0];
    (0..n).all(|v| v == root || closure.contains(root, v)) && closure == *r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(n: usize, edges: &[(usize, usize)]) -> FrameClassReport {
        frame_classify(&KripkeModel::from_indices(n, edges.iter().copied(), []).unwrap())
    }

    #[test]
    fn singleton_loop() {
        let r = classify(1, &[(0, 0)]);
        assert!(r.s5 && r.complete && !r.linear && !r.transitive_tree);
        assert_eq!(r.width, 1);
    }

    #[test]
    fn transitive_triangle_is_linear_tree() {
        let r = classify(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(r.linear && r.transitive_tree && !r.s5 && !r.complete);
        assert_eq!(r.width, 2);
    }

    #[test]
    fn symmetric_irreflexive_pair() {
        let r = classify(2, &[(0, 1), (1, 0)]);
        assert!(!r.complete && !r.s5 && !r.linear && !r.transitive_tree);
        assert_eq!(r.width, 1);
    }

    #[test]
    fn branching_transitive_tree() {
        let r = classify(4, &[(0, 1), (0, 2), (0, 3), (1, 3)]);
        assert!(r.transitive_tree && !r.linear);
        // Not transitively closed.
        assert!(!classify(3, &[(0, 1), (1, 2)]).transitive_tree);
        // Two roots.
        assert!(!classify(2, &[]).transitive_tree);
        assert!(classify(1, &[]).transitive_tree && classify(1, &[]).linear);
    }

    #[test]
    fn complete_is_s5() {
        for n in 1..=4 {
            let m = KripkeModel::new(
                (0..n).map(|i| i.to_string()).collect(),
                Relation::full(n),
                Default::default(),
            )
            .unwrap();
            let r = frame_classify(&m);
            assert!(r.complete && r.s5);
        }
    }

    #[test]
    fn frame_class_names() {
        assert_eq!("width:3".parse::<FrameClass>().unwrap(), FrameClass::Width(3));
        assert_eq!("tree".parse::<FrameClass>().unwrap(), FrameClass::TransitiveTree);
        assert!("wide".parse::<FrameClass>().is_err());
        assert_eq!(FrameClass::Width(2).to_string(), "width:2");
    }
}
