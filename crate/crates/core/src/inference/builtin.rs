use super::{build_witch_scenario, LikelihoodTable, Scenario, WitchConfig};
use crate::error::{Error, Result};
use crate::probability::{normalize, Distribution};
use crate::rational::Rational;

pub const BUILTIN_NAMES: [&str; 3] = ["witches", "tombola", "prenatal"];

/// Bingo draw: is the number `37`? Observation is its parity.
pub fn tombola_scenario() -> Scenario {
    let prior = normalize([("37", Rational::integer(1)), ("other", Rational::integer(89))]).expect("valid prior");
    let parity = LikelihoodTable::from_fracs(
        &["37", "other"],
        &["pari", "dispari"],
        &[&[(0, 1), (1, 1)], &[(45, 89), (44, 89)]],
    )
    .expect("valid table");
    Scenario::new("tombola", prior, parity, None).expect("consistent labels")
}

/// Sex of an unborn child (`M`/`F`) and a test reading `m`/`f` that is right
/// 95% of the time for boys and 80% for girls.
pub fn prenatal_scenario() -> Scenario {
    let prior = Distribution::uniform(["M", "F"]).expect("valid prior");
    let test = LikelihoodTable::from_fracs(
        &["M", "F"],
        &["m", "f"],
        &[&[(95, 100), (5, 100)], &[(20, 100), (80, 100)]],
    )
    .expect("valid table");
    Scenario::new("prenatal", prior, test, None).expect("consistent labels")
}

pub fn builtin_scenarios() -> Vec<(&'static str, Scenario)> {
    vec![
        ("witches", build_witch_scenario(&WitchConfig::default()).expect("default config is valid")),
        ("tombola", tombola_scenario()),
        ("prenatal", prenatal_scenario()),
    ]
}

pub fn builtin_scenario(name: &str) -> Result<Scenario> {
    builtin_scenarios()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s)
        .ok_or_else(|| Error::UnknownLabel(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::{sequential_posterior, EvidenceSequence};
    use crate::probability::Probability;

    #[test]
    fn tombola_parity() {
        let t = tombola_scenario();
        let odd = sequential_posterior(&t, &EvidenceSequence::new(["dispari"])).unwrap();
        assert_eq!(odd.prob("37").unwrap(), &Probability::frac(1, 45));
        let even = sequential_posterior(&t, &EvidenceSequence::new(["pari"])).unwrap();
        assert!(even.prob("37").unwrap().is_zero());
    }

    #[test]
    fn prenatal_readings() {
        let s = prenatal_scenario();
        let m = sequential_posterior(&s, &EvidenceSequence::new(["m"])).unwrap();
        let f = sequential_posterior(&s, &EvidenceSequence::new(["f"])).unwrap();
        assert_eq!(m.prob("M").unwrap(), &Probability::frac(19, 23));
        assert_eq!(f.prob("F").unwrap(), &Probability::frac(16, 17));
        assert!(f.prob("F").unwrap() > m.prob("M").unwrap());
    }

    #[test]
    fn lookup() {
        assert_eq!(builtin_scenarios().len(), 3);
        assert_eq!(builtin_scenario("tombola").unwrap().name(), "tombola");
        assert!(builtin_scenario("meteo").is_err());
    }
}
