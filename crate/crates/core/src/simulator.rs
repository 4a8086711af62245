//! Seeded Monte Carlo simulation of the daily draw, used as a frequency
//! oracle for the exact results.
//!
//! Each simulated day consumes draws in a fixed order: the witch (uniform
//! over the cave, the first `violet` indices wearing violet hats), her taste
//! given her hat, then the food from the strategy given the hat. Tastes are
//! drawn per day from the hat group's fractions rather than fixed per witch;
//! the two agree in distribution.

use std::io::{self, Write};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::decision::{anger_probability, Strategy};
use crate::error::{Error, Result};
use crate::inference::{hypothesis_label, sequential_posterior, EvidenceSequence, LikelihoodTable, Scenario, BLACK, VIOLET};
use crate::probability::Probability;
use crate::rational::Rational;
use crate::rng::Xoshiro256StarStar;

/// How many of the cave's witches wear violet hats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    pub violet: u32,
    pub total: u32,
}

impl Composition {
    pub fn new(violet: u32, total: u32) -> Result<Self> {
        if total == 0 || violet > total {
            return Err(Error::InvalidConfig(format!("composition {violet}/{total}")));
        }
        Ok(Composition { violet, total })
    }

    pub fn violet_probability(&self) -> Probability {
        Probability::new(Rational::new(self.violet, self.total).expect("total > 0")).expect("violet <= total")
    }

    pub fn hypothesis(&self) -> String {
        hypothesis_label(self.violet)
    }

    fn draw_hat(&self, rng: &mut Xoshiro256StarStar) -> &'static str {
        if rng.below(self.total as u64) < self.violet as u64 {
            VIOLET
        } else {
            BLACK
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DayRecord {
    pub day_index: u64,
    pub true_hypothesis: String,
    pub hat_color: String,
    pub food_served: String,
    pub witch_taste: String,
    pub angry: bool,
}

/// Draws a taste for `hat` from the taste table and a food from the
/// strategy.
pub(crate) fn draw_taste_and_food(
    rng: &mut Xoshiro256StarStar,
    hat: &str,
    tastes: &LikelihoodTable,
    strategy: &Strategy,
) -> Result<(String, String)> {
    let taste_dist = tastes.row_distribution(hat).map_err(|_| Error::UnknownHatColor(hat.to_string()))?;
    let food_dist = strategy.for_hat(hat)?;
    let taste = rng.sample(&taste_dist).to_string();
    let food = rng.sample(food_dist).to_string();
    Ok((taste, food))
}

pub fn simulate_day(
    rng: &mut Xoshiro256StarStar,
    day_index: u64,
    composition: &Composition,
    tastes: &LikelihoodTable,
    strategy: &Strategy,
) -> Result<DayRecord> {
    let hat = composition.draw_hat(rng);
    let (witch_taste, food_served) = draw_taste_and_food(rng, hat, tastes, strategy)?;
    Ok(DayRecord {
        day_index,
        true_hypothesis: composition.hypothesis(),
        hat_color: hat.to_string(),
        angry: food_served != witch_taste,
        food_served,
        witch_taste,
    })
}

pub fn simulate_hat_sequence(rng: &mut Xoshiro256StarStar, composition: &Composition, days: u64) -> EvidenceSequence {
    EvidenceSequence::new((0..days).map(|_| composition.draw_hat(rng)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub seed: u64,
    pub trials: u64,
    pub composition: Composition,
    pub tastes: LikelihoodTable,
    pub strategy: Strategy,
}

/// Observed count against an exact probability.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrequencyCheck {
    pub count: u64,
    pub trials: u64,
    pub frequency: f64,
    pub expected: Probability,
    /// Binomial standard deviation of the frequency.
    pub sigma: f64,
    /// Distance from the expectation in standard deviations; zero when the
    /// observation matches a degenerate expectation exactly.
    pub z: f64,
}

impl FrequencyCheck {
    pub fn new(count: u64, trials: u64, expected: Probability) -> Self {
        let p = expected.to_f64();
        let frequency = if trials == 0 { 0.0 } else { count as f64 / trials as f64 };
        let sigma = if trials == 0 { 0.0 } else { (p * (1.0 - p) / trials as f64).sqrt() };
        let diff = (frequency - p).abs();
        let z = if sigma > 0.0 {
            diff / sigma
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        FrequencyCheck { count, trials, frequency, expected, sigma, z }
    }

    pub fn within(&self, sigmas: f64) -> bool {
        self.z <= sigmas
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimSummary {
    #[serde(rename = "type")]
    pub kind: &'static str,
    pub seed: u64,
    pub days: u64,
    pub composition: Composition,
    pub strategy: Strategy,
    pub hat_counts: IndexMap<String, u64>,
    pub angry_counts: IndexMap<String, u64>,
    pub violet_frequency: FrequencyCheck,
    /// Anger frequency among days with the given hat, against the exact
    /// conditional anger probability.
    pub anger_by_hat: IndexMap<String, FrequencyCheck>,
}

impl SimSummary {
    pub fn within(&self, sigmas: f64) -> bool {
        self.violet_frequency.within(sigmas) && self.anger_by_hat.values().all(|c| c.within(sigmas))
    }
}

#[derive(Serialize)]
struct DayLine<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    #[serde(flatten)]
    record: &'a DayRecord,
}

/// Runs `cfg.trials` days, handing each record to `on_day`.
pub fn run_simulation(cfg: &SimConfig, mut on_day: impl FnMut(&DayRecord)) -> Result<SimSummary> {
    let mut rng = Xoshiro256StarStar::seed_from_u64(cfg.seed);
    let hats = [BLACK, VIOLET];
    let mut hat_counts: IndexMap<String, u64> = hats.iter().map(|h| (h.to_string(), 0)).collect();
    let mut angry_counts = hat_counts.clone();
    for day in 0..cfg.trials {
        let rec = simulate_day(&mut rng, day, &cfg.composition, &cfg.tastes, &cfg.strategy)?;
        hat_counts[rec.hat_color.as_str()] += 1;
        if rec.angry {
            angry_counts[rec.hat_color.as_str()] += 1;
        }
        on_day(&rec);
    }
    let violet_frequency =
        FrequencyCheck::new(hat_counts[VIOLET], cfg.trials, cfg.composition.violet_probability());
    let anger_by_hat = hats
        .iter()
        .map(|&h| {
            let exact = anger_probability(&cfg.strategy, &cfg.tastes, h)?;
            Ok((h.to_string(), FrequencyCheck::new(angry_counts[h], hat_counts[h], exact)))
        })
        .collect::<Result<IndexMap<_, _>>>()?;
    Ok(SimSummary {
        kind: "summary",
        seed: cfg.seed,
        days: cfg.trials,
        composition: cfg.composition,
        strategy: cfg.strategy.clone(),
        hat_counts,
        angry_counts,
        violet_frequency,
        anger_by_hat,
    })
}

/// Writes the simulation as JSON lines: one `{"type":"day",...}` record per
/// day when `with_days` is set, then the `{"type":"summary",...}` record.
pub fn write_jsonl(cfg: &SimConfig, with_days: bool, out: &mut impl Write) -> Result<SimSummary> {
    let mut io_err: Option<io::Error> = None;
    let summary = run_simulation(cfg, |rec| {
        if with_days && io_err.is_none() {
            let line = serde_json::to_string(&DayLine { kind: "day", record: rec }).expect("record serializes");
            if let Err(e) = writeln!(out, "{line}") {
                io_err = Some(e);
            }
        }
    })?;
    if let Some(e) = io_err {
        return Err(Error::InvalidConfig(format!("write failed: {e}")));
    }
    let line = serde_json::to_string(&summary).expect("summary serializes");
    writeln!(out, "{line}").map_err(|e| Error::InvalidConfig(format!("write failed: {e}")))?;
    Ok(summary)
}

/// One calibration bin over the posterior of the target hypothesis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CalibrationBin {
    pub lower: f64,
    pub upper: f64,
    pub runs: u64,
    /// Runs in which the target hypothesis was the true one.
    pub hits: u64,
    pub mean_posterior: f64,
    pub observed_frequency: f64,
    /// Standard deviation of the hit frequency, `sqrt(sum q(1-q)) / runs`.
    pub sigma: f64,
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CalibrationReport {
    pub seed: u64,
    pub days: u64,
    pub repetitions: u64,
    pub target: String,
    pub truth_counts: IndexMap<String, u64>,
    pub mean_true_posterior: f64,
    /// Runs whose posterior equalled the prior exactly.
    pub unchanged_runs: u64,
    pub bins: Vec<CalibrationBin>,
}

impl CalibrationReport {
    pub fn within(&self, sigmas: f64) -> bool {
        self.bins.iter().all(|b| b.z <= sigmas)
    }
}

/// Draws a true hypothesis from the prior, a `days`-long sequence from it,
/// computes the exact posterior, and repeats. Among runs whose posterior on
/// `target` falls in a bin, the frequency of `target` being true should
/// match the mean posterior in that bin.
pub fn monte_carlo_posterior_check(
    seed: u64,
    scenario: &Scenario,
    target: &str,
    days: u64,
    repetitions: u64,
    bins: usize,
) -> Result<CalibrationReport> {
    if repetitions == 0 || bins == 0 {
        return Err(Error::InvalidConfig("repetitions and bins must be positive".into()));
    }
    let target_idx = scenario.first_layer().hypothesis_index(target)?;
    let rows = scenario
        .hypotheses()
        .iter()
        .map(|h| scenario.first_layer().row_distribution(h))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut truth_counts: IndexMap<String, u64> = scenario.hypotheses().iter().map(|h| (h.clone(), 0)).collect();
    let mut acc = vec![(0u64, 0u64, 0.0f64, 0.0f64); bins];
    let mut true_posterior_sum = 0.0;
    let mut unchanged_runs = 0;

    for _ in 0..repetitions {
        let truth = rng.sample(scenario.prior()).to_string();
        let truth_idx = scenario.first_layer().hypothesis_index(&truth)?;
        truth_counts[truth.as_str()] += 1;
        let seq = EvidenceSequence::new((0..days).map(|_| rng.sample(&rows[truth_idx]).to_string()));
        let post = sequential_posterior(scenario, &seq)?;
        if &post == scenario.prior() {
            unchanged_runs += 1;
        }
        let probs: Vec<f64> = post.probabilities().map(Probability::to_f64).collect();
        true_posterior_sum += probs[truth_idx];
        let q = probs[target_idx];
        let bin = ((q * bins as f64) as usize).min(bins - 1);
        let slot = &mut acc[bin];
        slot.0 += 1;
        if truth_idx == target_idx {
            slot.1 += 1;
        }
        slot.2 += q;
        slot.3 += q * (1.0 - q);
    }

    let bins_out = acc
        .into_iter()
        .enumerate()
        .map(|(i, (runs, hits, sum_q, sum_var))| {
            let n = runs.max(1) as f64;
            let mean_posterior = sum_q / n;
            let observed_frequency = hits as f64 / n;
            let sigma = sum_var.sqrt() / n;
            let diff = (observed_frequency - mean_posterior).abs();
            let z = if sigma > 0.0 {
                diff / sigma
            } else if diff < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            CalibrationBin {
                lower: i as f64 / bins as f64,
                upper: (i + 1) as f64 / bins as f64,
                runs,
                hits,
                mean_posterior,
                observed_frequency,
                sigma,
                z,
            }
        })
        .collect();

    Ok(CalibrationReport {
        seed,
        days,
        repetitions,
        target: target.to_string(),
        truth_counts,
        mean_true_posterior: true_posterior_sum / repetitions as f64,
        unchanged_runs,
        bins: bins_out,
    })
}
