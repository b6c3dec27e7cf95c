use std::fmt;

use super::{KripkeModel, ModelError, StateId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpdateKind {
    Sabotage,
    Bridge,
    Swap,
}

impl fmt::Display for UpdateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpdateKind::Sabotage => "sabotage",
            UpdateKind::Bridge => "bridge",
            UpdateKind::Swap => "swap",
        })
    }
}

/// Applies a relation update to `model`:
///
/// * sabotage, `S ⊆ R`: `R' = R \ S`
/// * bridge, `S ⊆ (W×W) \ R`: `R' = R ∪ S`
/// * swap, `S ⊆ R⁻¹`: `R' = (R \ S⁻¹) ∪ S`
///
/// States and valuation are unchanged. The first pair violating the
/// precondition is reported.
pub fn update(kind: UpdateKind, model: &KripkeModel, pairs: &[(StateId, StateId)]) -> Result<KripkeModel, ModelError> {
    let rel = model.relation();
    for &(a, b) in pairs {
        model.check_state(a)?;
        model.check_state(b)?;
        let ok = match kind {
            UpdateKind::Sabotage => rel.contains(a, b),
            UpdateKind::Bridge => !rel.contains(a, b),
            UpdateKind::Swap => rel.contains(b, a),
        };
        if !ok {
            return Err(ModelError::Precondition {
                kind,
                from: model.name(a).to_string(),
                to: model.name(b).to_string(),
            });
        }
    }
    let mut next = rel.clone();
    match kind {
        UpdateKind::Sabotage => pairs.iter().for_each(|&(a, b)| next.remove(a, b)),
        UpdateKind::Bridge => pairs.iter().for_each(|&(a, b)| next.insert(a, b)),
        UpdateKind::Swap => {
            pairs.iter().for_each(|&(a, b)| next.remove(b, a));
            pairs.iter().for_each(|&(a, b)| next.insert(a, b));
        }
    }
    Ok(model.with_relation(next))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use proptest::prelude::*;

    use super::*;
    use crate::kripke::Relation;

    fn two_states(edges: &[(usize, usize)]) -> KripkeModel {
        KripkeModel::from_indices(2, edges.iter().copied(), []).unwrap()
    }

    #[test]
    fn sabotage_only_edge() {
        let m = update(UpdateKind::Sabotage, &two_states(&[(0, 1)]), &[(0, 1)]).unwrap();
        assert!(m.relation().is_empty());
    }

    #[test]
    fn swap_inverts_edge() {
        let m = update(UpdateKind::Swap, &two_states(&[(0, 1)]), &[(1, 0)]).unwrap();
        assert_eq!(m.relation().to_set(), BTreeSet::from([(1, 0)]));
    }

    #[test]
    fn bridge_loop() {
        let m = KripkeModel::from_indices(1, [], []).unwrap();
        let m = update(UpdateKind::Bridge, &m, &[(0, 0)]).unwrap();
        assert_eq!(m.relation().to_set(), BTreeSet::from([(0, 0)]));
    }

    #[test]
    fn preconditions_name_the_pair() {
        let m = two_states(&[(0, 1)]);
        let err = update(UpdateKind::Sabotage, &m, &[(1, 0)]).unwrap_err();
        assert_eq!(err.to_string(), "sabotage precondition violated by pair (1, 0)");
        assert!(update(UpdateKind::Bridge, &m, &[(0, 1)]).is_err());
        assert!(update(UpdateKind::Swap, &m, &[(0, 1)]).is_err());
        assert!(matches!(
            update(UpdateKind::Bridge, &m, &[(0, 7)]),
            Err(ModelError::StateOutOfRange { .. })
        ));
    }

    fn arb_model() -> impl Strategy<Value = KripkeModel> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let pairs = (0..n * n).filter(|&i| bits[i]).map(|i| (i / n, i % n));
                KripkeModel::new(
                    (0..n).map(|i| i.to_string()).collect(),
                    Relation::from_pairs(n, pairs),
                    Default::default(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn swap_matches_set_formula(m in arb_model(), pick in any::<u64>()) {
            let inverse: Vec<_> = m.relation().pairs().map(|(a, b)| (b, a)).collect();
            let s: Vec<_> = inverse.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|(_, p)| *p).collect();
            let got = update(UpdateKind::Swap, &m, &s).unwrap();
            let r = m.relation().to_set();
            let s_set: BTreeSet<_> = s.iter().copied().collect();
            let s_inv: BTreeSet<_> = s.iter().map(|&(a, b)| (b, a)).collect();
            let expected: BTreeSet<_> = r.difference(&s_inv).copied().collect::<BTreeSet<_>>().union(&s_set).copied().collect();
            prop_assert_eq!(got.relation().to_set(), expected);
        }
    }
}
