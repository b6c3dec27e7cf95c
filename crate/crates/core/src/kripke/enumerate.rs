use std::collections::{BTreeMap, BTreeSet};

use super::{KripkeModel, Relation, StateId};

/// Largest state count enumerated; relations are indexed by a 64-bit mask.
pub const MAX_ENUMERATED_STATES: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    pub model: KripkeModel,
    pub point: StateId,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerateOptions {
    /// Keep only the first pointed model of each isomorphism class: the one
    /// whose (relation mask, valuation mask, point) is least among all
    /// relabellings.
    pub prune_isomorphic: bool,
}

/// All pointed models with `1..=max_states` states over `props`.
///
/// States are named `0..k`. Order: `k` ascending, then the relation as a
/// bitmask (bit `i*k + j` is the pair `(i, j)`), then the valuation as a
/// bitmask (bit `p*k + s` puts state `s` in the `p`-th proposition, props in
/// sorted order), then the designated state.
pub fn enumerate_models(
    max_states: usize,
    props: &BTreeSet<String>,
    options: EnumerateOptions,
) -> impl Iterator<Item = PointedModel> + '_ {
    assert!(
        max_states <= MAX_ENUMERATED_STATES,
        "at most {MAX_ENUMERATED_STATES} states"
    );
    (1..=max_states).flat_map(move |k| enumerate_models_of_size(k, props, options))
}

/// The slice of [`enumerate_models`] with exactly `k` states.
pub fn enumerate_models_of_size(
    k: usize,
    props: &BTreeSet<String>,
    options: EnumerateOptions,
) -> impl Iterator<Item = PointedModel> + '_ {
    let space = ModelSpace::new(k, props);
    let perms = if options.prune_isomorphic {
        permutations(k)
    } else {
        Vec::new()
    };
    (0..space.relation_count()).flat_map(move |rel| {
        let space = space.clone();
        let perms = perms.clone();
        (0..space.valuation_count()).flat_map(move |val| {
            let model = space.model(rel, val);
            let perms = perms.clone();
            let space = space.clone();
            (0..k)
                .filter(move |&point| !options.prune_isomorphic || space.is_canonical(rel, val, point, &perms))
                .map(move |point| PointedModel {
                    model: model.clone(),
                    point,
                })
        })
    })
}

/// `Σ_{k=1..max} k · 2^(k²) · 2^(k·|props|)`, without pruning.
pub fn model_count(max_states: usize, prop_count: usize) -> u128 {
    (1..=max_states as u32)
        .map(|k| (k as u128) << (k * k + k * prop_count as u32))
        .sum()
}

/// Indexing of all models with exactly `k` states over fixed propositions.
#[derive(Debug, Clone)]
pub(crate) struct ModelSpace {
    pub k: usize,
    pub props: Vec<String>,
}

impl ModelSpace {
    pub fn new(k: usize, props: &BTreeSet<String>) -> Self {
        assert!((1..=MAX_ENUMERATED_STATES).contains(&k));
        ModelSpace {
            k,
            props: props.iter().cloned().collect(),
        }
    }

    pub fn relation_count(&self) -> u64 {
        1u64 << (self.k * self.k)
    }

    pub fn valuation_count(&self) -> u64 {
        1u64 << (self.k * self.props.len())
    }

    pub fn model(&self, rel: u64, val: u64) -> KripkeModel {
        let k = self.k;
        let valuation: BTreeMap<String, BTreeSet<StateId>> = self
            .props
            .iter()
            .enumerate()
            .map(|(p, name)| (name.clone(), (0..k).filter(|s| val >> (p * k + s) & 1 == 1).collect()))
            .collect();
        KripkeModel::new(
            (0..k).map(|i| i.to_string()).collect(),
            Relation::from_mask(k, rel),
            valuation,
        )
        .expect("enumerated models are well formed")
    }

    pub fn is_canonical(&self, rel: u64, val: u64, point: StateId, perms: &[Vec<usize>]) -> bool {
        let k = self.k;
        perms.iter().all(|p| {
            let mut prel = 0u64;
            for i in 0..k {
                for j in 0..k {
                    if rel >> (i * k + j) & 1 == 1 {
                        prel |= 1 << (p[i] * k + p[j]);
                    }
                }
            }
            let mut pval = 0u64;
            for q in 0..self.props.len() {
                for (s, &ps) in p.iter().enumerate() {
                    if val >> (q * k + s) & 1 == 1 {
                        pval |= 1 << (q * k + ps);
                    }
                }
            }
            (prel, pval, p[point]) >= (rel, val, point)
        })
    }
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
