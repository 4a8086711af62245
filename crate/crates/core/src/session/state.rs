//! One game as a fold over its event log.
//!
//! Events record accepted commands only. Everything random is re-derived
//! from the session seed during the fold, so a log replays to the same
//! state, hidden truth included, without ever storing the truth.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::protocol::{
    labeled, ErrorBody, Mode, PendingDay, ProbValue, RevealView, ServeOutcome, StateView, StrategySummary, WhatIfView,
};
use crate::decision::{anger_probability, marginal_anger, optimal_strategy, Strategy};
use crate::inference::{
    second_layer_distribution, sequential_posterior, update_posterior, predictive_from_posterior, EvidenceSequence,
    Scenario, ScenarioDocument,
};
use crate::network::{diagram_from_scenario, NetDiagram};
use crate::probability::Distribution;
use crate::rng::Xoshiro256StarStar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    Created {
        id: String,
        scenario: ScenarioDocument,
        mode: Mode,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    Observed {
        hat: String,
    },
    DayStarted,
    Served {
        food: String,
    },
    Reset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub day: u64,
    pub hat: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub food: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angry: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionEntry {
    pub day: u64,
    pub hat: String,
    pub food: String,
    /// The food the deterministic optimal strategy would have served.
    pub recommended: String,
    pub angry: bool,
}

#[derive(Clone, Debug)]
struct Pending {
    day: u64,
    hat: String,
    taste: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Session {
    id: String,
    scenario: Scenario,
    mode: Mode,
    seed: Option<u64>,
    hidden_truth: Option<String>,
    rng: Option<Xoshiro256StarStar>,
    hats: EvidenceSequence,
    history: Vec<HistoryEntry>,
    pending: Option<Pending>,
    decision_log: Vec<DecisionEntry>,
    current_posterior: Distribution,
    events: Vec<Event>,
}

impl Session {
    /// Starts a session. In simulated mode the hidden truth is drawn from
    /// the scenario prior with the session seed.
    pub fn create(id: String, scenario: Scenario, mode: Mode, seed: Option<u64>) -> Session {
        let event = Event::Created { id: id.clone(), scenario: ScenarioDocument::from(&scenario), mode, seed };
        let (rng, hidden_truth) = match mode {
            Mode::Simulated => {
                let mut rng = Xoshiro256StarStar::seed_from_u64(seed.unwrap_or(0));
                let truth = rng.sample(scenario.prior()).to_string();
                (Some(rng), Some(truth))
            }
            Mode::Manual => (None, None),
        };
        Session {
            id,
            current_posterior: scenario.prior().clone(),
            scenario,
            mode,
            seed,
            hidden_truth,
            rng,
            hats: EvidenceSequence::empty(),
            history: Vec::new(),
            pending: None,
            decision_log: Vec::new(),
            events: vec![event],
        }
    }

    /// Rebuilds a session from its event log.
    pub fn replay(events: &[Event]) -> Result<Session, ErrorBody> {
        let (first, rest) = events.split_first().ok_or_else(|| ErrorBody::bad_request("empty event log"))?;
        let Event::Created { id, scenario, mode, seed } = first else {
            return Err(ErrorBody::bad_request("event log must start with a created event"));
        };
        let scenario = Scenario::try_from(scenario.clone())?;
        let mut session = Session::create(id.clone(), scenario, *mode, *seed);
        for event in rest {
            session.apply(event.clone())?;
        }
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn hats(&self) -> &EvidenceSequence {
        &self.hats
    }

    pub fn current_posterior(&self) -> &Distribution {
        &self.current_posterior
    }

    /// Validates and applies one event, appending it to the log.
    pub fn apply(&mut self, event: Event) -> Result<(), ErrorBody> {
        match &event {
            Event::Created { .. } => return Err(ErrorBody::bad_request("session already created")),
            Event::Observed { hat } => self.observe(hat)?,
            Event::DayStarted => self.start_day()?,
            Event::Served { food } => {
                self.serve(food)?;
            }
            Event::Reset => self.reset(),
        }
        self.events.push(event);
        Ok(())
    }

    /// Like [`apply`](Self::apply) for `Served`, returning the outcome.
    pub fn apply_serve(&mut self, food: &str) -> Result<ServeOutcome, ErrorBody> {
        let outcome = self.serve(food)?;
        self.events.push(Event::Served { food: food.to_string() });
        Ok(outcome)
    }

    fn next_day_number(&self) -> u64 {
        self.history.len() as u64 + 1
    }

    fn record_hat(&mut self, hat: &str) -> Result<(), ErrorBody> {
        let one = EvidenceSequence::new([hat]);
        one.validate(&self.scenario)?;
        let updated = update_posterior(&self.scenario, &self.current_posterior, &one)?;
        self.current_posterior = updated;
        self.hats.push(hat);
        self.history.push(HistoryEntry { day: self.next_day_number(), hat: hat.to_string(), food: None, angry: None });
        Ok(())
    }

    fn observe(&mut self, hat: &str) -> Result<(), ErrorBody> {
        if self.mode != Mode::Manual {
            return Err(ErrorBody::wrong_mode("observe is only available in manual mode"));
        }
        self.record_hat(hat)
    }

    fn start_day(&mut self) -> Result<(), ErrorBody> {
        if self.mode != Mode::Simulated {
            return Err(ErrorBody::wrong_mode("next_day is only available in simulated mode"));
        }
        // an unserved day is simply left without a decision
        self.pending = None;
        let truth = self.hidden_truth.clone().expect("simulated sessions have a truth");
        let rng = self.rng.as_mut().expect("simulated sessions have an rng");
        let row = self.scenario.first_layer().row_distribution(&truth)?;
        let hat = rng.sample(&row).to_string();
        let taste = match self.scenario.second_layer() {
            Some(t) => Some(rng.sample(&t.row_distribution(&hat)?).to_string()),
            None => None,
        };
        let day = self.next_day_number();
        self.record_hat(&hat)?;
        self.pending = Some(Pending { day, hat, taste });
        Ok(())
    }

    fn serve(&mut self, food: &str) -> Result<ServeOutcome, ErrorBody> {
        if self.mode != Mode::Simulated {
            return Err(ErrorBody::wrong_mode("serve is only available in simulated mode"));
        }
        let tastes = self.scenario.require_second_layer()?;
        tastes.outcome_index(food)?;
        let pending = self.pending.take().ok_or_else(|| ErrorBody::conflict("no day awaiting a decision"))?;
        let taste = pending.taste.expect("taste drawn when a second layer exists");
        let angry = food != taste;
        let recommended = optimal_strategy(tastes)?
            .food_for(&pending.hat)?
            .expect("optimal strategy is deterministic")
            .to_string();
        let entry = self.history.last_mut().expect("pending day is in the history");
        entry.food = Some(food.to_string());
        entry.angry = Some(angry);
        self.decision_log.push(DecisionEntry {
            day: pending.day,
            hat: pending.hat.clone(),
            food: food.to_string(),
            recommended,
            angry,
        });
        Ok(ServeOutcome { day: pending.day, hat: pending.hat, food: food.to_string(), witch_taste: taste, angry })
    }

    /// Clears the observations and decisions. The hidden truth stays and
    /// the random stream continues where it was.
    fn reset(&mut self) {
        self.hats = EvidenceSequence::empty();
        self.history.clear();
        self.pending = None;
        self.decision_log.clear();
        self.current_posterior = self.scenario.prior().clone();
    }

    pub fn state_view(&self) -> Result<StateView, ErrorBody> {
        let predictive = predictive_from_posterior(&self.scenario, &self.current_posterior)?;
        let taste_predictive = match self.scenario.second_layer() {
            Some(_) => Some(labeled(&second_layer_distribution(&self.scenario, &self.hats)?)),
            None => None,
        };
        let (recommended, strategies) = match self.scenario.second_layer() {
            Some(tastes) => {
                let optimal = optimal_strategy(tastes)?;
                let recommended = self
                    .scenario
                    .outcomes()
                    .iter()
                    .map(|hat| {
                        let food = optimal.food_for(hat)?.expect("deterministic").to_string();
                        Ok((hat.clone(), food))
                    })
                    .collect::<Result<IndexMap<_, _>, crate::Error>>()?;
                let mut strategies = IndexMap::new();
                for (name, strategy) in [("deterministic", optimal), ("medallion", Strategy::medallion(tastes)?)] {
                    strategies.insert(name.to_string(), self.summarize(strategy)?);
                }
                (Some(recommended), Some(strategies))
            }
            None => (None, None),
        };
        Ok(StateView {
            session: self.id.clone(),
            scenario: self.scenario.name().to_string(),
            mode: self.mode,
            day: self.history.len() as u64,
            hats: self.hats.to_text(),
            history: self.history.clone(),
            pending_day: self.pending.as_ref().map(|p| PendingDay { day: p.day, hat: p.hat.clone() }),
            posterior: labeled(&self.current_posterior),
            predictive: labeled(&predictive),
            taste_predictive,
            recommended,
            strategies,
            decision_log: self.decision_log.clone(),
        })
    }

    fn summarize(&self, strategy: Strategy) -> Result<StrategySummary, crate::Error> {
        let tastes = self.scenario.require_second_layer()?;
        let anger_by_hat = self
            .scenario
            .outcomes()
            .iter()
            .map(|hat| Ok((hat.clone(), ProbValue::from(&anger_probability(&strategy, tastes, hat)?))))
            .collect::<Result<IndexMap<_, _>, crate::Error>>()?;
        let marginal = marginal_anger(&strategy, &self.scenario, &self.current_posterior)?;
        Ok(StrategySummary { strategy, anger_by_hat, marginal_anger: ProbValue::from(&marginal) })
    }

    /// Beliefs after appending `suffix` to the observed hats, without
    /// touching the session.
    pub fn what_if(&self, suffix: &EvidenceSequence) -> Result<WhatIfView, ErrorBody> {
        let hats = self.hats.concat(suffix);
        let posterior = sequential_posterior(&self.scenario, &hats)?;
        let predictive = predictive_from_posterior(&self.scenario, &posterior)?;
        let taste_predictive = match self.scenario.second_layer() {
            Some(_) => Some(labeled(&second_layer_distribution(&self.scenario, &hats)?)),
            None => None,
        };
        Ok(WhatIfView {
            session: self.id.clone(),
            suffix: suffix.to_text(),
            hats: hats.to_text(),
            posterior: labeled(&posterior),
            predictive: labeled(&predictive),
            taste_predictive,
        })
    }

    pub fn network(&self) -> Result<NetDiagram, ErrorBody> {
        let evidence = self.hats.labels().last().map(String::as_str);
        Ok(diagram_from_scenario(&self.scenario, Some(&self.current_posterior), evidence)?)
    }

    pub fn reveal(&self) -> RevealView {
        RevealView { session: self.id.clone(), hidden_truth: self.hidden_truth.clone() }
    }
}
