use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::FormulaGenerator;
use crate::formula::{profile, Family, HybridFormula, RcFormula};
use crate::hybrid_semantics::{hy_check, NominalAssignment};
use crate::kripke::{enumerate_models, EnumerateOptions, ModelFile, PointedModel};
use crate::rc_semantics::rc_check;
use crate::translator::{translate, translate_eco_with, Mutation, TranslateOptions};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleParams {
    pub family: Family,
    pub max_states: usize,
    pub formula_count: usize,
    pub depth: usize,
    pub seed: u64,
    /// Leave the global operator out of the generated formulas.
    pub local_only: bool,
    pub mutation: Option<Mutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TranslationKind {
    Standard,
    Economical,
}

/// The first pointed model, in enumeration order, on which a formula and its
/// translation disagree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub formula_index: usize,
    pub formula: String,
    pub translation: TranslationKind,
    pub hybrid: String,
    pub model: ModelFile,
    pub state: String,
    pub rc_value: bool,
    pub hybrid_value: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub parameters: OracleParams,
    /// Pointed models per formula.
    pub checked_models: usize,
    pub checked_formulas: usize,
    /// Formulas that also went through the economical translation.
    pub economical_formulas: usize,
    pub disagreements: Vec<Disagreement>,
    /// Wall-clock seconds; the only field that varies between identical runs.
    pub elapsed: f64,
}

/// Generates `formula_count` formulas from `seed` and compares `rc_check`
/// with `hy_check` of each translation on every pointed model with at most
/// `max_states` states over `{p}`. Local sabotage and swap formulas are also
/// checked through the economical translation.
pub fn oracle_compare(params: &OracleParams) -> OracleReport {
    let start = Instant::now();
    let props: BTreeSet<String> = ["p".to_string()].into_iter().collect();
    let models: Vec<PointedModel> = enumerate_models(params.max_states, &props, EnumerateOptions::default()).collect();
    let formulas: Vec<RcFormula> = FormulaGenerator::new(params.seed, params.family, params.depth, params.local_only)
        .take(params.formula_count)
        .collect();
    let options = TranslateOptions {
        mutation: params.mutation,
        ..Default::default()
    };

    let results: Vec<(bool, Vec<Disagreement>)> = formulas
        .par_iter()
        .enumerate()
        .map(|(index, phi)| {
            let mut translations = vec![(
                TranslationKind::Standard,
                translate(phi, params.family, &options).expect("generated formulas are family-pure"),
            )];
            let economical = params.family != Family::Bridge && !profile(phi).uses_global;
            if economical {
                translations.push((
                    TranslationKind::Economical,
                    translate_eco_with(phi, params.family, &options).expect("local formulas have an economical form"),
                ));
            }
            let found = translations
                .into_iter()
                .filter_map(|(kind, psi)| first_disagreement(index, phi, kind, &psi, &models))
                .collect();
            (economical, found)
        })
        .collect();

    OracleReport {
        parameters: params.clone(),
        checked_models: models.len(),
        checked_formulas: formulas.len(),
        economical_formulas: results.iter().filter(|(eco, _)| *eco).count(),
        disagreements: results.into_iter().flat_map(|(_, d)| d).collect(),
        elapsed: start.elapsed().as_secs_f64(),
    }
}

fn first_disagreement(
    index: usize,
    phi: &RcFormula,
    kind: TranslationKind,
    psi: &HybridFormula,
    models: &[PointedModel],
) -> Option<Disagreement> {
    let nominals = psi.nominals();
    models.iter().find_map(|pm| {
        let g = NominalAssignment::uniform(nominals.iter().cloned(), pm.point);
        let rc_value = rc_check(&pm.model, pm.point, phi).expect("enumerated points are states");
        let hybrid_value = hy_check(&pm.model, &g, pm.point, psi).expect("translations are closed");
        (rc_value != hybrid_value).then(|| Disagreement {
            formula_index: index,
            formula: phi.to_string(),
            translation: kind,
            hybrid: psi.to_string(),
            model: ModelFile::from_model(&pm.model, Some(pm.point)),
            state: pm.model.name(pm.point).to_string(),
            rc_value,
            hybrid_value,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(family: Family, mutation: Option<Mutation>) -> OracleParams {
        OracleParams {
            family,
            max_states: 2,
            formula_count: 12,
            depth: 2,
            seed: 3,
            local_only: false,
            mutation,
        }
    }

    #[test]
    fn small_sweeps_agree() {
        for family in Family::ALL {
            let report = oracle_compare(&params(family, None));
            assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
            assert_eq!(report.checked_models as u128, crate::kripke::model_count(2, 1));
            assert_eq!(report.checked_formulas, 12);
        }
    }

    #[test]
    fn reports_are_deterministic_apart_from_timing() {
        let mut a = oracle_compare(&params(Family::Swap, Some(Mutation::DropBelongs)));
        let mut b = oracle_compare(&params(Family::Swap, Some(Mutation::DropBelongs)));
        a.elapsed = 0.0;
        b.elapsed = 0.0;
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn dropped_guards_are_detected() {
        let mut p = params(Family::Sabotage, Some(Mutation::DropBelongs));
        p.max_states = 3;
        p.formula_count = 30;
        p.depth = 3;
        let report = oracle_compare(&p);
        let d = report.disagreements.first().expect("the mutation must be caught");
        assert_ne!(d.rc_value, d.hybrid_value);
        let file = serde_json::to_string(&d.model).unwrap();
        assert!(crate::kripke::parse_model(&file).is_ok());
    }
}
