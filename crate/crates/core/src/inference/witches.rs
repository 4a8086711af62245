use serde::{Deserialize, Serialize};

use super::{LikelihoodTable, Scenario};
use crate::error::{Error, Result};
use crate::probability::{Distribution, Probability};
use crate::rational::Rational;

/// Black hat.
pub const BLACK: &str = "N";
/// Violet hat.
pub const VIOLET: &str = "V";
pub const SWEET: &str = "Sweet";
pub const SALTY: &str = "Salty";

/// The cave: how many witches, which violet counts are entertained, and the
/// taste fractions within each hat group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitchConfig {
    pub total_witches: u32,
    pub candidate_violet_counts: Vec<u32>,
    /// Fraction of violet-hatted witches who like sweet food.
    pub violet_sweet_fraction: Rational,
    /// Fraction of black-hatted witches who like salty food.
    pub black_salty_fraction: Rational,
}

impl Default for WitchConfig {
    fn default() -> Self {
        WitchConfig {
            total_witches: 21,
            candidate_violet_counts: vec![7, 14],
            violet_sweet_fraction: Rational::frac(6, 7),
            black_salty_fraction: Rational::one(),
        }
    }
}

impl WitchConfig {
    /// Every violet count from 1 to `total - 1`.
    pub fn all_mixed(total_witches: u32) -> Self {
        WitchConfig {
            total_witches,
            candidate_violet_counts: (1..total_witches).collect(),
            ..WitchConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.total_witches == 0 {
            return Err(Error::InvalidConfig("total_witches must be positive".into()));
        }
        if self.candidate_violet_counts.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &self.candidate_violet_counts {
            if v > self.total_witches {
                return Err(Error::InvalidConfig(format!(
                    "violet count {v} exceeds total {}",
                    self.total_witches
                )));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidConfig(format!("duplicate violet count {v}")));
            }
        }
        Probability::new(self.violet_sweet_fraction.clone())?;
        Probability::new(self.black_salty_fraction.clone())?;
        Ok(())
    }

    /// The hat-to-taste table implied by the two fractions.
    pub fn taste_table(&self) -> Result<LikelihoodTable> {
        let sweet_violet = Probability::new(self.violet_sweet_fraction.clone())?;
        let salty_black = Probability::new(self.black_salty_fraction.clone())?;
        LikelihoodTable::new(
            vec![BLACK.into(), VIOLET.into()],
            vec![SWEET.into(), SALTY.into()],
            vec![
                vec![salty_black.complement(), salty_black],
                vec![sweet_violet.clone(), sweet_violet.complement()],
            ],
        )
    }
}

pub fn hypothesis_label(violet_count: u32) -> String {
    format!("V{violet_count}")
}

/// One hypothesis per candidate violet count `v`, with `P(V | v) = v/total`,
/// a uniform prior, and the taste table as second layer.
pub fn build_witch_scenario(cfg: &WitchConfig) -> Result<Scenario> {
    if cfg.candidate_violet_counts.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    cfg.validate()?;
    let hypotheses: Vec<String> = cfg.candidate_violet_counts.iter().map(|&v| hypothesis_label(v)).collect();
    let rows = cfg
        .candidate_violet_counts
        .iter()
        .map(|&v| {
            let violet = Probability::new(Rational::new(v, cfg.total_witches)?)?;
            Ok(vec![violet.complement(), violet])
        })
        .collect::<Result<Vec<_>>>()?;
    let first = LikelihoodTable::new(hypotheses.clone(), vec![BLACK.into(), VIOLET.into()], rows)?;
    let prior = Distribution::uniform(hypotheses)?;
    Scenario::new("witches", prior, first, Some(cfg.taste_table()?))
}

/// Drops every hypothesis under which one of the `seen` outcomes has
/// probability zero, then renormalizes the prior.
pub fn filter_by_observed_outcomes(scenario: &Scenario, seen: &[&str]) -> Result<Scenario> {
    let columns = seen
        .iter()
        .map(|o| scenario.first_layer.column(o))
        .collect::<Result<Vec<_>>>()?;
    let keep: Vec<bool> = (0..scenario.hypotheses().len())
        .map(|i| columns.iter().all(|col| !col[i].is_zero()))
        .collect();
    scenario.retain_hypotheses(&keep)
}

pub fn filter_by_observed_colors(scenario: &Scenario, seen_black: bool, seen_violet: bool) -> Result<Scenario> {
    let mut seen = Vec::new();
    if seen_black {
        seen.push(BLACK);
    }
    if seen_violet {
        seen.push(VIOLET);
    }
    filter_by_observed_outcomes(scenario, &seen)
}
