//! Food-serving strategies and their anger probabilities (0-1 loss: the
//! drawn witch is angry when the food differs from the taste she prefers).

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::inference::{LikelihoodTable, Scenario};
use crate::probability::{Distribution, Probability};
use crate::rational::Rational;

/// For each hat color, a distribution over the foods served.
///
/// Serializes as `{"N": {"Salty": "1/1"}, "V": {"Sweet": "6/7", "Salty": "1/7"}}`;
/// foods with probability zero are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    per_hat: Vec<(String, Distribution)>,
}

impl Strategy {
    pub fn new(per_hat: Vec<(String, Distribution)>) -> Result<Self> {
        crate::probability::check_unique(per_hat.iter().map(|(h, _)| h.as_str()))?;
        Ok(Strategy { per_hat })
    }

    /// Always serve `food` on `hat`, for each pair.
    pub fn deterministic<H: Into<String>, F: Into<String>>(choices: impl IntoIterator<Item = (H, F)>) -> Result<Self> {
        let per_hat = choices
            .into_iter()
            .map(|(h, f)| {
                let f: String = f.into();
                Ok((h.into(), Distribution::new([(f, Probability::one())])?))
            })
            .collect::<Result<Vec<_>>>()?;
        Strategy::new(per_hat)
    }

    /// Draws the food with the same proportions as the tastes within each
    /// hat group (one medallion per witch, marked with her taste).
    pub fn medallion(taste_table: &LikelihoodTable) -> Result<Self> {
        let per_hat = taste_table
            .hypotheses()
            .iter()
            .map(|hat| Ok((hat.clone(), taste_table.row_distribution(hat)?)))
            .collect::<Result<Vec<_>>>()?;
        Strategy::new(per_hat)
    }

    pub fn per_hat(&self) -> &[(String, Distribution)] {
        &self.per_hat
    }

    pub fn for_hat(&self, hat: &str) -> Result<&Distribution> {
        self.per_hat
            .iter()
            .find(|(h, _)| h == hat)
            .map(|(_, d)| d)
            .ok_or_else(|| Error::UnknownHatColor(hat.to_string()))
    }

    pub fn is_deterministic(&self) -> bool {
        self.per_hat
            .iter()
            .all(|(_, d)| d.probabilities().filter(|p| !p.is_zero()).count() == 1)
    }

    /// The food served on `hat` when the strategy is a point mass there.
    pub fn food_for(&self, hat: &str) -> Result<Option<&str>> {
        let d = self.for_hat(hat)?;
        Ok(d.entries().iter().find(|(_, p)| p.value().is_one()).map(|(f, _)| f.as_str()))
    }
}

impl Serialize for Strategy {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: IndexMap<&str, IndexMap<&str, &Rational>> = self
            .per_hat
            .iter()
            .map(|(hat, d)| {
                let foods = d
                    .entries()
                    .iter()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(f, p)| (f.as_str(), p.value()))
                    .collect();
                (hat.as_str(), foods)
            })
            .collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map: IndexMap<String, IndexMap<String, Probability>> = IndexMap::deserialize(deserializer)?;
        let per_hat = map
            .into_iter()
            .map(|(hat, foods)| Ok((hat, Distribution::new(foods)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Strategy::new(per_hat).map_err(serde::de::Error::custom)
    }
}

/// `sum over (taste, food), food != taste, of P(taste | hat) P(food | hat)`.
pub fn anger_probability(strategy: &Strategy, taste_table: &LikelihoodTable, hat: &str) -> Result<Probability> {
    let foods = strategy.for_hat(hat)?;
    let tastes = taste_table
        .row(hat)
        .map_err(|_| Error::UnknownHatColor(hat.to_string()))?;
    let anger: Rational = taste_table
        .outcomes()
        .iter()
        .zip(tastes)
        .flat_map(|(taste, pt)| {
            foods
                .entries()
                .iter()
                .filter(move |(food, _)| food != taste)
                .map(move |(_, pf)| pt.value() * pf.value())
        })
        .sum();
    Probability::new(anger)
}

/// Anger probability given a specific hat, and (optionally) averaged over
/// the hats predicted by a posterior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AngerReport {
    pub per_hat: IndexMap<String, Probability>,
    pub marginal: Option<Probability>,
}

pub fn anger_report(strategy: &Strategy, scenario: &Scenario, posterior: Option<&Distribution>) -> Result<AngerReport> {
    let tastes = scenario.require_second_layer()?;
    let per_hat = tastes
        .hypotheses()
        .iter()
        .map(|hat| Ok((hat.clone(), anger_probability(strategy, tastes, hat)?)))
        .collect::<Result<IndexMap<_, _>>>()?;
    let marginal = posterior.map(|post| marginal_anger(strategy, scenario, post)).transpose()?;
    Ok(AngerReport { per_hat, marginal })
}

/// `sum over hypotheses h and hats c of P(h) P(c | h) anger(c)`.
pub fn marginal_anger(strategy: &Strategy, scenario: &Scenario, posterior: &Distribution) -> Result<Probability> {
    let tastes = scenario.require_second_layer()?;
    if !posterior.labels().eq(scenario.hypotheses().iter().map(String::as_str)) {
        return Err(Error::LabelMismatch);
    }
    let per_hat = scenario
        .outcomes()
        .iter()
        .map(|hat| anger_probability(strategy, tastes, hat))
        .collect::<Result<Vec<_>>>()?;
    let total: Rational = posterior
        .probabilities()
        .zip(scenario.first_layer().rows())
        .flat_map(|(ph, row)| {
            row.iter()
                .zip(&per_hat)
                .map(move |(pc, anger)| ph.value() * pc.value() * anger.value())
        })
        .sum();
    Probability::new(total)
}

/// For each hat, a point mass on the food with the largest taste
/// probability; ties go to the food listed first in the table.
pub fn optimal_strategy(taste_table: &LikelihoodTable) -> Result<Strategy> {
    let foods = taste_table.outcomes();
    let per_hat = taste_table
        .hypotheses()
        .iter()
        .zip(taste_table.rows())
        .map(|(hat, row)| {
            let best = row
                .iter()
                .enumerate()
                .fold(0, |best, (j, p)| if p > &row[best] { j } else { best });
            Ok((hat.clone(), Distribution::point_mass(foods.iter().cloned(), &foods[best])?))
        })
        .collect::<Result<Vec<_>>>()?;
    Strategy::new(per_hat)
}

/// Counts of the equiprobable (witch, medallion) cells for one hat group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChessboardCount {
    pub satisfied: u64,
    pub angry: u64,
}

/// Grid of witch columns (by preferred taste) against medallion rows (by
/// food written on them). `true` marks an angry cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chessboard {
    pub columns: Vec<String>,
    pub rows: Vec<String>,
    pub angry: Vec<Vec<bool>>,
}

impl Chessboard {
    pub fn new(witch_tastes: &[(&str, u64)], medallions: &[(&str, u64)]) -> Chessboard {
        let expand = |groups: &[(&str, u64)]| -> Vec<String> {
            groups
                .iter()
                .flat_map(|&(label, n)| std::iter::repeat_n(label.to_string(), n as usize))
                .collect()
        };
        let columns = expand(witch_tastes);
        let rows = expand(medallions);
        let angry = rows
            .iter()
            .map(|food| columns.iter().map(|taste| food != taste).collect())
            .collect();
        Chessboard { columns, rows, angry }
    }

    pub fn count(&self) -> ChessboardCount {
        let angry = self.angry.iter().flatten().filter(|&&a| a).count() as u64;
        let cells = (self.rows.len() * self.columns.len()) as u64;
        ChessboardCount { satisfied: cells - angry, angry }
    }
}

/// The violet-hat medallion strategy: six sweet-loving witches and one
/// salty-loving witch, against six sweet medallions and one salty.
pub fn chessboard_oracle() -> ChessboardCount {
    use crate::inference::{SALTY, SWEET};
    Chessboard::new(&[(SWEET, 6), (SALTY, 1)], &[(SWEET, 6), (SALTY, 1)]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::{build_witch_scenario, WitchConfig, BLACK, SALTY, SWEET, VIOLET};

    fn p(n: i64, d: i64) -> Probability {
        Probability::frac(n, d)
    }

    fn witches() -> Scenario {
        build_witch_scenario(&WitchConfig::default()).unwrap()
    }

    fn tastes() -> LikelihoodTable {
        witches().second_layer().unwrap().clone()
    }

    #[test]
    fn anger_examples() {
        let t = tastes();
        let det = Strategy::deterministic([(BLACK, SALTY), (VIOLET, SWEET)]).unwrap();
        let med = Strategy::medallion(&t).unwrap();
        assert_eq!(anger_probability(&det, &t, VIOLET).unwrap(), p(7, 49));
        assert_eq!(anger_probability(&med, &t, VIOLET).unwrap(), p(12, 49));
        assert_eq!(anger_probability(&det, &t, BLACK).unwrap(), p(0, 1));
        assert!(matches!(anger_probability(&det, &t, "Green"), Err(Error::UnknownHatColor(_))));
    }

    #[test]
    fn chessboard_examples() {
        assert_eq!(chessboard_oracle(), ChessboardCount { satisfied: 37, angry: 12 });
        let all_salty = Chessboard::new(&[(SWEET, 6), (SALTY, 1)], &[(SALTY, 7)]).count();
        assert_eq!(all_salty, ChessboardCount { satisfied: 7, angry: 42 });
        let all_sweet = Chessboard::new(&[(SWEET, 6), (SALTY, 1)], &[(SWEET, 7)]).count();
        assert_eq!(all_sweet.angry, 7);
        let board = Chessboard::new(&[(SWEET, 6), (SALTY, 1)], &[(SWEET, 7)]);
        // only the salty-loving column is angry
        assert!(board.angry.iter().all(|row| row[6] && !row[..6].iter().any(|&a| a)));
    }

    #[test]
    fn optimal_examples() {
        let opt = optimal_strategy(&tastes()).unwrap();
        assert_eq!(opt.food_for(BLACK).unwrap(), Some(SALTY));
        assert_eq!(opt.food_for(VIOLET).unwrap(), Some(SWEET));
        assert!(opt.is_deterministic());

        let sweet_only = LikelihoodTable::from_fracs(&["h"], &[SWEET, SALTY], &[&[(1, 1), (0, 1)]]).unwrap();
        assert_eq!(optimal_strategy(&sweet_only).unwrap().food_for("h").unwrap(), Some(SWEET));

        let tie = LikelihoodTable::from_fracs(&["h"], &[SWEET, SALTY], &[&[(1, 2), (1, 2)]]).unwrap();
        assert_eq!(optimal_strategy(&tie).unwrap().food_for("h").unwrap(), Some(SWEET));
    }

    #[test]
    fn marginal_examples() {
        let w = witches();
        let v14 = Distribution::point_mass(["V7", "V14"], "V14").unwrap();
        let opt = optimal_strategy(w.second_layer().unwrap()).unwrap();
        let med = Strategy::medallion(w.second_layer().unwrap()).unwrap();
        assert_eq!(marginal_anger(&opt, &w, &v14).unwrap(), p(2, 21));
        assert_eq!(marginal_anger(&med, &w, &v14).unwrap(), p(2 * 12, 3 * 49));

        let cfg = WitchConfig { candidate_violet_counts: vec![0, 7], ..WitchConfig::default() };
        let s = build_witch_scenario(&cfg).unwrap();
        let v0 = Distribution::point_mass(["V0", "V7"], "V0").unwrap();
        assert_eq!(marginal_anger(&med, &s, &v0).unwrap(), p(0, 1));

        let report = anger_report(&med, &w, Some(&v14)).unwrap();
        assert_eq!(report.per_hat[VIOLET], p(12, 49));
        assert_eq!(report.marginal, Some(p(24, 147)));
    }

    #[test]
    fn strategy_json() {
        let med = Strategy::medallion(&tastes()).unwrap();
        let json = serde_json::to_string(&med).unwrap();
        assert_eq!(json, r#"{"N":{"Salty":"1/1"},"V":{"Sweet":"6/7","Salty":"1/7"}}"#);
        let back: Strategy = serde_json::from_str(&json).unwrap();
        for hat in [BLACK, VIOLET] {
            assert_eq!(
                anger_probability(&back, &tastes(), hat).unwrap(),
                anger_probability(&med, &tastes(), hat).unwrap()
            );
        }
        assert!(serde_json::from_str::<Strategy>(r#"{"V":{"Sweet":"1/2"}}"#).is_err());
    }

    #[test]
    fn scaling_the_cave_keeps_per_hat_anger() {
        let small = build_witch_scenario(&WitchConfig::default()).unwrap();
        let big = build_witch_scenario(&WitchConfig {
            total_witches: 42,
            candidate_violet_counts: vec![14, 28],
            ..WitchConfig::default()
        })
        .unwrap();
        let med = Strategy::medallion(small.second_layer().unwrap()).unwrap();
        assert_eq!(anger_report(&med, &small, None).unwrap(), anger_report(&med, &big, None).unwrap());
    }
}
