//! JSON model files:
//!
//! ```json
//! {"states": ["w","v"], "relation": [["w","v"]], "valuation": {"A": ["w"]}, "point": "w"}
//! ```
//!
//! `point` and `nominals` (a map from nominal to state) are optional.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{KripkeModel, ModelError, Relation, StateId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub states: Vec<String>,
    #[serde(default)]
    pub relation: Vec<(String, String)>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nominals: Option<BTreeMap<String, String>>,
}

/// A model read from a file, with its optional designated state and nominal
/// seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedModel {
    pub model: KripkeModel,
    pub point: Option<StateId>,
    pub nominals: BTreeMap<String, StateId>,
}

impl ModelFile {
    /// Canonical file for a model: relation and valuation sets listed in state
    /// order.
    pub fn from_model(model: &KripkeModel, point: Option<StateId>) -> Self {
        let name = |s: StateId| model.name(s).to_string();
        ModelFile {
            states: model.names().to_vec(),
            relation: model.relation().pairs().map(|(a, b)| (name(a), name(b))).collect(),
            valuation: model
                .valuation()
                .iter()
                .map(|(p, set)| (p.clone(), set.iter().map(|&s| name(s)).collect()))
                .collect(),
            point: point.map(name),
            nominals: None,
        }
    }

    pub fn into_model(self) -> Result<LoadedModel, ModelError> {
        let index: BTreeMap<&str, StateId> = self.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != self.states.len() {
            let mut seen = BTreeSet::new();
            let dup = self
                .states
                .iter()
                .find(|s| !seen.insert(s.as_str()))
                .cloned()
                .unwrap_or_default();
            return Err(ModelError::DuplicateState(dup));
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| ModelError::UnknownState(name.to_string()))
        };

        let mut relation = Relation::empty(self.states.len());
        for (a, b) in &self.relation {
            relation.insert(lookup(a)?, lookup(b)?);
        }
        let mut valuation = BTreeMap::new();
        for (p, states) in &self.valuation {
            let set = states.iter().map(|s| lookup(s)).collect::<Result<BTreeSet<_>, _>>()?;
            valuation.insert(p.clone(), set);
        }
        let point = self.point.as_deref().map(lookup).transpose()?;
        let nominals = self
            .nominals
            .iter()
            .flatten()
            .map(|(n, s)| Ok((n.clone(), lookup(s)?)))
            .collect::<Result<_, ModelError>>()?;
        let model = KripkeModel::new(self.states.clone(), relation, valuation)?;
        Ok(LoadedModel { model, point, nominals })
    }
}

pub fn parse_model(text: &str) -> Result<LoadedModel, ModelError> {
    let file: ModelFile = serde_json::from_str(text)?;
    file.into_model()
}

pub fn load_model(path: impl AsRef<Path>) -> Result<LoadedModel, ModelError> {
    parse_model(&std::fs::read_to_string(path)?)
}

pub fn save_model(model: &KripkeModel, point: Option<StateId>, path: impl AsRef<Path>) -> Result<(), ModelError> {
    let file = ModelFile::from_model(model, point);
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
