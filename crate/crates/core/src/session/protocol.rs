//! Request and response payloads shared by every transport (stdio, HTTP).

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::decision::Strategy;
use crate::error::Error;
use crate::inference::{EvidenceSequence, Scenario, ScenarioDocument};
use crate::probability::{Distribution, Probability};
use crate::session::state::{DecisionEntry, HistoryEntry};

pub const PROTOCOL_FORMAT: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Hats are drawn by the server from a hidden true hypothesis.
    #[serde(alias = "live-simulated")]
    Simulated,
    /// The player types in the hats they see.
    #[serde(alias = "manual-entry")]
    Manual,
}

/// A builtin scenario name or a full scenario document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScenarioSpec {
    Builtin(String),
    Inline(ScenarioDocument),
}

impl ScenarioSpec {
    pub fn resolve(&self) -> Result<Scenario, Error> {
        match self {
            ScenarioSpec::Builtin(name) => crate::inference::builtin_scenario(name),
            ScenarioSpec::Inline(doc) => Scenario::try_from(doc.clone()),
        }
    }
}

/// A sequence given either as text (`"NNVN"`, `"pari,dispari"`) or as a
/// list of labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceSpec {
    Text(String),
    Labels(Vec<String>),
}

impl SequenceSpec {
    pub fn resolve(&self, scenario: &Scenario) -> Result<EvidenceSequence, Error> {
        match self {
            SequenceSpec::Text(t) => EvidenceSequence::parse(t, scenario),
            SequenceSpec::Labels(l) => {
                let seq = EvidenceSequence::new(l.iter().cloned());
                seq.validate(scenario)?;
                Ok(seq)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Request {
    CreateSession {
        scenario: ScenarioSpec,
        mode: Mode,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    Observe {
        session: String,
        #[serde(alias = "outcome")]
        hat: String,
    },
    NextDay {
        session: String,
    },
    State {
        session: String,
    },
    Serve {
        session: String,
        food: String,
    },
    WhatIf {
        session: String,
        suffix: SequenceSpec,
    },
    Network {
        session: String,
    },
    Reset {
        session: String,
    },
    Reveal {
        session: String,
    },
}

/// An exact probability with its decimal rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbValue {
    pub exact: Probability,
    pub approx: String,
}

impl From<&Probability> for ProbValue {
    fn from(p: &Probability) -> Self {
        ProbValue { exact: p.clone(), approx: p.to_decimal() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledProb {
    pub label: String,
    pub exact: Probability,
    pub approx: String,
}

/// Distribution rendered as `[{label, exact, approx}, ...]`, in label order.
pub fn labeled(d: &Distribution) -> Vec<LabeledProb> {
    d.entries()
        .iter()
        .map(|(label, p)| LabeledProb { label: label.clone(), exact: p.clone(), approx: p.to_decimal() })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategySummary {
    pub strategy: Strategy,
    pub anger_by_hat: IndexMap<String, ProbValue>,
    pub marginal_anger: ProbValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendingDay {
    pub day: u64,
    pub hat: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateView {
    pub session: String,
    pub scenario: String,
    pub mode: Mode,
    pub day: u64,
    pub hats: String,
    pub history: Vec<HistoryEntry>,
    pub pending_day: Option<PendingDay>,
    pub posterior: Vec<LabeledProb>,
    pub predictive: Vec<LabeledProb>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taste_predictive: Option<Vec<LabeledProb>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recommended: Option<IndexMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategies: Option<IndexMap<String, StrategySummary>>,
    pub decision_log: Vec<DecisionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhatIfView {
    pub session: String,
    pub suffix: String,
    pub hats: String,
    pub posterior: Vec<LabeledProb>,
    pub predictive: Vec<LabeledProb>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taste_predictive: Option<Vec<LabeledProb>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServeOutcome {
    pub day: u64,
    pub hat: String,
    pub food: String,
    pub witch_taste: String,
    pub angry: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevealView {
    pub session: String,
    pub hidden_truth: Option<String>,
}

/// Error body with the HTTP-style status it maps to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub status: u16,
    pub kind: String,
    pub message: String,
}

impl ErrorBody {
    pub fn new(status: u16, kind: &str, message: impl Into<String>) -> Self {
        ErrorBody { status, kind: kind.to_string(), message: message.into() }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        ErrorBody::new(400, "bad_request", message)
    }

    pub fn unknown_session(id: &str) -> Self {
        ErrorBody::new(404, "unknown_session", format!("no session {id:?}"))
    }

    pub fn wrong_mode(message: impl Into<String>) -> Self {
        ErrorBody::new(409, "wrong_mode", message)
    }

    pub fn conflict(message: impl Into<String>) -> Self {
        ErrorBody::new(409, "conflict", message)
    }
}

impl From<Error> for ErrorBody {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::UnknownLabel(_) | Error::UnknownOutcome(_) | Error::UnknownHypothesis(_) | Error::UnknownHatColor(_) => {
                "unknown_label"
            }
            Error::ImpossibleEvidence => "impossible_evidence",
            Error::NoSecondLayer => {
                return ErrorBody::conflict(e.to_string());
            }
            _ => "invalid",
        };
        ErrorBody::new(422, kind, e.to_string())
    }
}

/// Envelope written on every transport: `{"format":1,"ok":true,"result":...}`
/// or `{"format":1,"ok":false,"error":{...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub format: u32,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

impl Response {
    pub fn ok(result: impl Serialize) -> Self {
        Response {
            format: PROTOCOL_FORMAT,
            ok: true,
            result: Some(serde_json::to_value(result).expect("payload serializes")),
            error: None,
        }
    }

    pub fn err(error: ErrorBody) -> Self {
        Response { format: PROTOCOL_FORMAT, ok: false, result: None, error: Some(error) }
    }

    pub fn status(&self) -> u16 {
        self.error.as_ref().map_or(200, |e| e.status)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("response serializes")
    }
}
