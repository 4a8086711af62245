//! Scenarios (hypotheses, prior, one or two likelihood layers) and the
//! inference built on them: sequence likelihoods, sequential posteriors,
//! predictive probabilities, taste-to-hat inversion and the rule of
//! succession.
//!
//! Observations are independent given the hypothesis, so a sequence enters
//! only through its outcome counts.

mod builtin;
mod document;
mod witches;

pub use builtin::{builtin_scenario, builtin_scenarios, prenatal_scenario, tombola_scenario, BUILTIN_NAMES};
pub use document::{ScenarioDocument, TableDocument, SCENARIO_FORMAT};
pub use witches::{
    build_witch_scenario, filter_by_observed_colors, filter_by_observed_outcomes, hypothesis_label, WitchConfig,
    BLACK, SALTY, SWEET, VIOLET,
};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::probability::{self, check_unique, Distribution, Probability};
use crate::rational::Rational;

/// Conditional probabilities `P(outcome | hypothesis)`, one row per hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LikelihoodTable {
    hypotheses: Vec<String>,
    outcomes: Vec<String>,
    rows: Vec<Vec<Probability>>,
}

impl LikelihoodTable {
    pub fn new(hypotheses: Vec<String>, outcomes: Vec<String>, rows: Vec<Vec<Probability>>) -> Result<Self> {
        check_unique(hypotheses.iter().map(String::as_str))?;
        check_unique(outcomes.iter().map(String::as_str))?;
        if rows.len() != hypotheses.len() {
            return Err(Error::LengthMismatch { expected: hypotheses.len(), actual: rows.len() });
        }
        for row in &rows {
            if row.len() != outcomes.len() {
                return Err(Error::LengthMismatch { expected: outcomes.len(), actual: row.len() });
            }
            let sum: Rational = row.iter().map(Probability::value).sum();
            if !sum.is_one() {
                return Err(Error::NotNormalized(sum.to_string()));
            }
        }
        Ok(LikelihoodTable { hypotheses, outcomes, rows })
    }

    /// Convenience constructor from string literals and `(num, den)` pairs.
    pub fn from_fracs(hypotheses: &[&str], outcomes: &[&str], rows: &[&[(i64, i64)]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&(n, d)| Probability::new(Rational::new(n, d)?)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::new(
            hypotheses.iter().map(|s| s.to_string()).collect(),
            outcomes.iter().map(|s| s.to_string()).collect(),
            rows,
        )
    }

    pub fn hypotheses(&self) -> &[String] {
        &self.hypotheses
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn rows(&self) -> &[Vec<Probability>] {
        &self.rows
    }

    pub fn hypothesis_index(&self, hypothesis: &str) -> Result<usize> {
        self.hypotheses
            .iter()
            .position(|h| h == hypothesis)
            .ok_or_else(|| Error::UnknownHypothesis(hypothesis.to_string()))
    }

    pub fn outcome_index(&self, outcome: &str) -> Result<usize> {
        self.outcomes
            .iter()
            .position(|o| o == outcome)
            .ok_or_else(|| Error::UnknownOutcome(outcome.to_string()))
    }

    pub fn row(&self, hypothesis: &str) -> Result<&[Probability]> {
        Ok(&self.rows[self.hypothesis_index(hypothesis)?])
    }

    pub fn row_distribution(&self, hypothesis: &str) -> Result<Distribution> {
        let row = self.row(hypothesis)?;
        Distribution::new(self.outcomes.iter().cloned().zip(row.iter().cloned()))
    }

    pub fn column(&self, outcome: &str) -> Result<Vec<Probability>> {
        let j = self.outcome_index(outcome)?;
        Ok(self.rows.iter().map(|row| row[j].clone()).collect())
    }

    pub fn p(&self, hypothesis: &str, outcome: &str) -> Result<&Probability> {
        let i = self.hypothesis_index(hypothesis)?;
        let j = self.outcome_index(outcome)?;
        Ok(&self.rows[i][j])
    }

    fn retain_rows(&self, keep: &[bool]) -> LikelihoodTable {
        let (hypotheses, rows) = self
            .hypotheses
            .iter()
            .zip(&self.rows)
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|((h, r), _)| (h.clone(), r.clone()))
            .unzip();
        LikelihoodTable { hypotheses, outcomes: self.outcomes.clone(), rows }
    }
}

/// Hypotheses with a prior, an observable first layer and an optional
/// second layer conditioned on the first-layer outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    name: String,
    prior: Distribution,
    first_layer: LikelihoodTable,
    second_layer: Option<LikelihoodTable>,
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        prior: Distribution,
        first_layer: LikelihoodTable,
        second_layer: Option<LikelihoodTable>,
    ) -> Result<Self> {
        if !prior.labels().eq(first_layer.hypotheses.iter().map(String::as_str)) {
            return Err(Error::LabelMismatch);
        }
        if let Some(second) = &second_layer {
            if second.hypotheses != first_layer.outcomes {
                return Err(Error::LabelMismatch);
            }
        }
        Ok(Scenario { name: name.into(), prior, first_layer, second_layer })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prior(&self) -> &Distribution {
        &self.prior
    }

    pub fn first_layer(&self) -> &LikelihoodTable {
        &self.first_layer
    }

    pub fn second_layer(&self) -> Option<&LikelihoodTable> {
        self.second_layer.as_ref()
    }

    pub fn require_second_layer(&self) -> Result<&LikelihoodTable> {
        self.second_layer.as_ref().ok_or(Error::NoSecondLayer)
    }

    pub fn hypotheses(&self) -> &[String] {
        &self.first_layer.hypotheses
    }

    pub fn outcomes(&self) -> &[String] {
        &self.first_layer.outcomes
    }

    /// Same model with a different prior over the hypotheses.
    pub fn with_prior(&self, prior: Distribution) -> Result<Scenario> {
        Scenario::new(self.name.clone(), prior, self.first_layer.clone(), self.second_layer.clone())
    }

    /// Keeps only the hypotheses flagged in `keep` and renormalizes the prior.
    fn retain_hypotheses(&self, keep: &[bool]) -> Result<Scenario> {
        let weights: Vec<(String, Rational)> = self
            .prior
            .entries()
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|((l, p), _)| (l.clone(), p.value().clone()))
            .collect();
        if weights.is_empty() {
            return Err(Error::NothingLeft);
        }
        let prior = probability::normalize(weights).map_err(|_| Error::NothingLeft)?;
        Scenario::new(self.name.clone(), prior, self.first_layer.retain_rows(keep), self.second_layer.clone())
    }
}

/// Ordered first-layer observations, e.g. `N,N,V,N`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EvidenceSequence(Vec<String>);

impl EvidenceSequence {
    pub fn new<L: Into<String>>(labels: impl IntoIterator<Item = L>) -> Self {
        EvidenceSequence(labels.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        EvidenceSequence(Vec::new())
    }

    /// Parses `text` against the scenario's outcome labels. Comma- or
    /// whitespace-separated labels are always accepted; when every outcome
    /// label is a single character, a run such as `NNVN` is split per char.
    pub fn parse(text: &str, scenario: &Scenario) -> Result<Self> {
        let text = text.trim();
        let labels: Vec<String> = if text.contains(',') || text.contains(char::is_whitespace) {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect()
        } else if scenario.outcomes().iter().all(|o| o.chars().count() == 1) {
            text.chars().map(String::from).collect()
        } else if text.is_empty() {
            Vec::new()
        } else {
            vec![text.to_string()]
        };
        let seq = EvidenceSequence(labels);
        seq.validate(scenario)?;
        Ok(seq)
    }

    pub fn validate(&self, scenario: &Scenario) -> Result<()> {
        for label in &self.0 {
            scenario.first_layer.outcome_index(label)?;
        }
        Ok(())
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, label: impl Into<String>) {
        self.0.push(label.into());
    }

    pub fn concat(&self, other: &EvidenceSequence) -> EvidenceSequence {
        EvidenceSequence(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn count(&self, label: &str) -> usize {
        self.0.iter().filter(|l| *l == label).count()
    }

    /// Compact text: labels concatenated when all are single characters,
    /// comma-separated otherwise.
    pub fn to_text(&self) -> String {
        if self.0.iter().all(|l| l.chars().count() == 1) {
            self.0.concat()
        } else {
            self.0.join(",")
        }
    }
}

fn outcome_counts(scenario: &Scenario, seq: &EvidenceSequence) -> Result<Vec<u32>> {
    let mut counts = vec![0u32; scenario.outcomes().len()];
    for label in seq.labels() {
        counts[scenario.first_layer.outcome_index(label)?] += 1;
    }
    Ok(counts)
}

fn likelihood_from_counts(row: &[Probability], counts: &[u32]) -> Probability {
    let value: Rational = row.iter().zip(counts).map(|(p, &c)| p.value().pow(c)).product();
    Probability::new(value).expect("product of probabilities")
}

/// Product of the first-layer probabilities of each observation.
pub fn sequence_likelihood(scenario: &Scenario, hypothesis: &str, seq: &EvidenceSequence) -> Result<Probability> {
    let row = scenario.first_layer.row(hypothesis)?;
    let counts = outcome_counts(scenario, seq)?;
    Ok(likelihood_from_counts(row, &counts))
}

/// Updates `current` (a distribution over the scenario's hypotheses) with
/// the observations in `seq`.
pub fn update_posterior(scenario: &Scenario, current: &Distribution, seq: &EvidenceSequence) -> Result<Distribution> {
    if !current.labels().eq(scenario.hypotheses().iter().map(String::as_str)) {
        return Err(Error::LabelMismatch);
    }
    let counts = outcome_counts(scenario, seq)?;
    let likelihoods: Vec<Probability> =
        scenario.first_layer.rows.iter().map(|row| likelihood_from_counts(row, &counts)).collect();
    probability::posterior(current, &likelihoods)
}

pub fn sequential_posterior(scenario: &Scenario, seq: &EvidenceSequence) -> Result<Distribution> {
    update_posterior(scenario, &scenario.prior, seq)
}

/// Predictive distribution over the next first-layer outcome.
pub fn predictive_distribution(scenario: &Scenario, seq: &EvidenceSequence) -> Result<Distribution> {
    let post = sequential_posterior(scenario, seq)?;
    predictive_from_posterior(scenario, &post)
}

pub(crate) fn predictive_from_posterior(scenario: &Scenario, post: &Distribution) -> Result<Distribution> {
    let entries = scenario
        .outcomes()
        .iter()
        .map(|o| Ok((o.clone(), probability::total_probability(&scenario.first_layer.column(o)?, post)?)))
        .collect::<Result<Vec<_>>>()?;
    Distribution::new(entries)
}

/// `P(outcome | seq)`: posterior-weighted mean of the outcome's column.
pub fn predictive(scenario: &Scenario, seq: &EvidenceSequence, outcome: &str) -> Result<Probability> {
    let column = scenario.first_layer.column(outcome)?;
    let post = sequential_posterior(scenario, seq)?;
    probability::total_probability(&column, &post)
}

/// Predictive distribution over the second-layer outcomes.
pub fn second_layer_distribution(scenario: &Scenario, seq: &EvidenceSequence) -> Result<Distribution> {
    let second = scenario.require_second_layer()?;
    let next = predictive_distribution(scenario, seq)?;
    let entries = second
        .outcomes
        .iter()
        .map(|s| Ok((s.clone(), probability::total_probability(&second.column(s)?, &next)?)))
        .collect::<Result<Vec<_>>>()?;
    Distribution::new(entries)
}

/// `P(second | seq) = sum_o P(second | o) P(o | seq)`.
pub fn second_layer_predictive(scenario: &Scenario, seq: &EvidenceSequence, second_outcome: &str) -> Result<Probability> {
    let second = scenario.require_second_layer()?;
    let column = second.column(second_outcome)?;
    let next = predictive_distribution(scenario, seq)?;
    probability::total_probability(&column, &next)
}

/// Posterior over first-layer outcomes (hat colors) given only the observed
/// second-layer outcome (the taste the witch liked).
pub fn infer_hat_from_taste(scenario: &Scenario, prior_over_hats: &Distribution, liked: &str) -> Result<Distribution> {
    let second = scenario.require_second_layer()?;
    let j = second.outcome_index(liked)?;
    let likelihoods = prior_over_hats
        .labels()
        .map(|hat| Ok(second.rows[second.hypothesis_index(hat)?][j].clone()))
        .collect::<Result<Vec<_>>>()?;
    probability::posterior(prior_over_hats, &likelihoods)
}

/// Rule of succession for `successes` in `trials`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Succession {
    /// `(x + 1) / (n + 2)`
    pub exact: Probability,
    /// `x / n`, the large-sample approximation; absent when `n = 0`.
    pub approximation: Option<Probability>,
}

pub fn laplace_succession(successes: u64, trials: u64) -> Result<Succession> {
    if successes > trials {
        return Err(Error::XExceedsN { x: successes, n: trials });
    }
    let exact = Probability::new(Rational::new(
        BigInt::from(successes) + 1,
        BigInt::from(trials) + 2,
    )?)?;
    let approximation = if trials > 0 {
        Some(Probability::new(Rational::new(successes, trials)?)?)
    } else {
        None
    };
    Ok(Succession { exact, approximation })
}
