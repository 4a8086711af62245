//! Versioned JSON form of a [`Scenario`].

use serde::{Deserialize, Serialize};

use super::{LikelihoodTable, Scenario};
use crate::error::{Error, Result};
use crate::probability::{Distribution, Probability};

pub const SCENARIO_FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub outcomes: Vec<String>,
    /// One row per hypothesis (or per first-layer outcome for the second
    /// layer), each entry a `"num/den"` string.
    pub p: Vec<Vec<Probability>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioDocument {
    pub format: u32,
    pub name: String,
    pub hypotheses: Vec<String>,
    pub prior: Vec<Probability>,
    pub first_layer: TableDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_layer: Option<TableDocument>,
}

fn table_document(t: &LikelihoodTable) -> TableDocument {
    TableDocument { outcomes: t.outcomes().to_vec(), p: t.rows().to_vec() }
}

impl From<&Scenario> for ScenarioDocument {
    fn from(s: &Scenario) -> Self {
        ScenarioDocument {
            format: SCENARIO_FORMAT,
            name: s.name().to_string(),
            hypotheses: s.hypotheses().to_vec(),
            prior: s.prior().probabilities().cloned().collect(),
            first_layer: table_document(s.first_layer()),
            second_layer: s.second_layer().map(table_document),
        }
    }
}

impl TryFrom<ScenarioDocument> for Scenario {
    type Error = Error;

    fn try_from(doc: ScenarioDocument) -> Result<Scenario> {
        if doc.format != SCENARIO_FORMAT {
            return Err(Error::Parse(format!("unsupported scenario format {}", doc.format)));
        }
        if doc.prior.len() != doc.hypotheses.len() {
            return Err(Error::LengthMismatch { expected: doc.hypotheses.len(), actual: doc.prior.len() });
        }
        let prior = Distribution::new(doc.hypotheses.iter().cloned().zip(doc.prior))?;
        let first = LikelihoodTable::new(doc.hypotheses, doc.first_layer.outcomes, doc.first_layer.p)?;
        let second = doc
            .second_layer
            .map(|t| LikelihoodTable::new(first.outcomes().to_vec(), t.outcomes, t.p))
            .transpose()?;
        Scenario::new(doc.name, prior, first, second)
    }
}

impl Scenario {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ScenarioDocument::from(self)).expect("scenario serializes")
    }

    pub fn from_json(text: &str) -> Result<Scenario> {
        let doc: ScenarioDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Scenario::try_from(doc)
    }
}
