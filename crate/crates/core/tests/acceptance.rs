//! Acceptance criteria. Analytic checks are exact rational equalities;
//! statistical checks use 3 binomial standard deviations. Each criterion is
//! its own test and prints one PASS/FAIL line.

mod common;

use std::fmt::Debug;
use std::path::PathBuf;

use common::{big, prenatal_cells, JointOracle};
use witchbayes::decision::{anger_probability, chessboard_oracle, optimal_strategy, ChessboardCount, Strategy};
use witchbayes::inference::{
    builtin_scenario, laplace_succession, predictive, second_layer_predictive, sequential_posterior, EvidenceSequence,
    Scenario, SALTY, SWEET,
};
use witchbayes::probability::{bayes_factor, distribution_from_odds, normalize, odds_from_distribution, posterior, update_odds};
use witchbayes::rng::Xoshiro256StarStar;
use witchbayes::session::SessionService;
use witchbayes::simulator::{monte_carlo_posterior_check, write_jsonl, Composition, SimConfig};
use witchbayes::{BayesFactor, Distribution, Odds, Probability, Rational};

const SIGMAS: f64 = 3.0;
const MC_TRIALS: u64 = 100_000;
const MC_SEED: u64 = 42;

fn report(id: &str, title: &str, result: Result<(), String>) {
    match &result {
        Ok(()) => println!("[PASS] {id} {title}"),
        Err(e) => println!("[FAIL] {id} {title}: {e}"),
    }
    if let Err(e) = result {
        panic!("{id} failed: {e}");
    }
}

fn expect_eq<T: PartialEq + Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn witches() -> Scenario {
    builtin_scenario("witches").unwrap()
}

fn seq(text: &str) -> EvidenceSequence {
    EvidenceSequence::parse(text, &witches()).unwrap()
}

fn probs(d: &Distribution) -> Vec<Probability> {
    d.probabilities().cloned().collect()
}

fn p(n: i64, d: i64) -> Probability {
    Probability::frac(n, d)
}

#[test]
fn ac01_posterior_after_four_black_hats() {
    let result = (|| {
        let post = sequential_posterior(&witches(), &seq("NNNN")).map_err(|e| e.to_string())?;
        expect_eq("posterior", probs(&post), vec![p(16, 17), p(1, 17)])
    })();
    report("AC01", "posterior after NNNN = (16/17, 1/17)", result);
}

#[test]
fn ac02_posterior_after_ten_violet_hats() {
    let result = (|| {
        let post = sequential_posterior(&witches(), &seq("VVVVVVVVVV")).map_err(|e| e.to_string())?;
        expect_eq("posterior", probs(&post), vec![p(1, 1025), p(1024, 1025)])
    })();
    report("AC02", "posterior after ten V = (1/1025, 1024/1025)", result);
}

#[test]
fn ac03_predictive_after_ten_violet_hats() {
    let result = (|| {
        let pv = predictive(&witches(), &seq("VVVVVVVVVV"), "V").map_err(|e| e.to_string())?;
        expect_eq("P(V | ten V)", pv.clone(), p(2049, 3075))?;
        let text = pv.to_decimal();
        if !text.starts_with("0.6663") {
            return Err(format!("decimal rendering {text}"));
        }
        Ok(())
    })();
    report("AC03", "P(V | ten V) = 2049/3075, renders 0.6663...", result);
}

#[test]
fn ac04_balanced_sequences_return_to_prior() {
    let w = witches();
    let mut rng = Xoshiro256StarStar::seed_from_u64(4);
    let result = (|| {
        for half in 0..=100u64 {
            // black then violet, and a random interleaving
            let ordered = EvidenceSequence::new((0..2 * half).map(|i| if i < half { "N" } else { "V" }));
            let mut labels: Vec<&str> = ordered.labels().iter().map(String::as_str).collect();
            for i in (1..labels.len()).rev() {
                labels.swap(i, rng.below(i as u64 + 1) as usize);
            }
            for s in [ordered.clone(), EvidenceSequence::new(labels)] {
                let post = sequential_posterior(&w, &s).map_err(|e| e.to_string())?;
                expect_eq(&format!("length {}", 2 * half), &post, w.prior())?;
            }
        }
        Ok(())
    })();
    report("AC04", "balanced sequences of length 0..200 give the uniform prior", result);
}

#[test]
fn ac05_exchangeability() {
    let w = witches();
    let mut rng = Xoshiro256StarStar::seed_from_u64(5);
    let result = (|| {
        for pair in 0..1000 {
            let len = rng.below(40) as usize;
            let original: Vec<&str> = (0..len).map(|_| if rng.below(2) == 0 { "N" } else { "V" }).collect();
            let mut permuted = original.clone();
            for i in (1..permuted.len()).rev() {
                permuted.swap(i, rng.below(i as u64 + 1) as usize);
            }
            let a = sequential_posterior(&w, &EvidenceSequence::new(original)).map_err(|e| e.to_string())?;
            let b = sequential_posterior(&w, &EvidenceSequence::new(permuted)).map_err(|e| e.to_string())?;
            expect_eq(&format!("pair {pair}"), a, b)?;
        }
        Ok(())
    })();
    report("AC05", "1000 random equal-count sequence pairs give identical posteriors", result);
}

#[test]
fn ac06_odds_form_equals_posterior_formula() {
    let mut rng = Xoshiro256StarStar::seed_from_u64(6);
    let mut small = |max_num: u64| {
        let den = rng.below(12) + 1;
        let num = rng.below(max_num.min(den) + 1);
        Rational::new(num, den).unwrap()
    };
    let result = (|| {
        let mut checked = 0;
        while checked < 1000 {
            let (wa, wb) = (small(12), small(12));
            let (l1, l2) = (Probability::new(small(12)).unwrap(), Probability::new(small(12)).unwrap());
            let Ok(prior) = normalize([("A", wa), ("B", wb)]) else { continue };
            let Ok(direct) = posterior(&prior, &[l1.clone(), l2.clone()]) else { continue };
            let factor = bayes_factor(&l1, &l2).map_err(|e| e.to_string())?;
            let odds = odds_from_distribution(&prior, "A", "B").map_err(|e| e.to_string())?;
            let updated = update_odds(&odds, &factor).map_err(|e| e.to_string())?;
            let via_odds = distribution_from_odds(&updated, "A", "B").map_err(|e| e.to_string())?;
            expect_eq(&format!("case {checked}"), via_odds, direct)?;
            checked += 1;
        }
        Ok(())
    })();
    report("AC06", "1000 random binary cases: odds x factor = posterior formula", result);
}

#[test]
fn ac07_decision_anger_and_chessboard() {
    let result = (|| {
        let tastes = witches().second_layer().unwrap().clone();
        let deterministic = optimal_strategy(&tastes).map_err(|e| e.to_string())?;
        let medallion = Strategy::medallion(&tastes).map_err(|e| e.to_string())?;
        let det = anger_probability(&deterministic, &tastes, "V").map_err(|e| e.to_string())?;
        let med = anger_probability(&medallion, &tastes, "V").map_err(|e| e.to_string())?;
        expect_eq("deterministic", det, p(7, 49))?;
        expect_eq("medallion", med.clone(), p(12, 49))?;
        let board = chessboard_oracle();
        expect_eq("chessboard", board, ChessboardCount { satisfied: 37, angry: 12 })?;
        expect_eq("angry/49", Probability::frac(board.angry as i64, 49), med)
    })();
    report("AC07", "anger given violet 7/49 vs 12/49; chessboard (37, 12)", result);
}

#[test]
fn ac08_taste_predictions() {
    let result = (|| {
        let w = witches();
        let v14 = w
            .with_prior(Distribution::point_mass(["V7", "V14"], "V14").unwrap())
            .map_err(|e| e.to_string())?;
        let none = EvidenceSequence::empty();
        expect_eq("P(Sweet | V14)", second_layer_predictive(&v14, &none, SWEET).unwrap(), p(4, 7))?;
        expect_eq("P(Salty | V14)", second_layer_predictive(&v14, &none, SALTY).unwrap(), p(3, 7))?;

        let oracle = JointOracle::from_scenario(&w);
        let n = oracle.outcome("N");
        let enumerated = oracle.second_predictive(&[n; 4], 1).unwrap();
        expect_eq("oracle P(S | 4N)", enumerated.clone(), big(83, 119))?;
        let lib = second_layer_predictive(&w, &seq("NNNN"), SALTY).map_err(|e| e.to_string())?;
        expect_eq("P(S | 4N)", lib.value().as_big().clone(), enumerated)
    })();
    report("AC08", "P(Sweet|V14)=4/7, P(Salty|V14)=3/7, P(S|4N)=83/119 by enumeration", result);
}

#[test]
fn ac09_tombola() {
    let result = (|| {
        let t = builtin_scenario("tombola").unwrap();
        let odd = sequential_posterior(&t, &EvidenceSequence::new(["dispari"])).map_err(|e| e.to_string())?;
        let even = sequential_posterior(&t, &EvidenceSequence::new(["pari"])).map_err(|e| e.to_string())?;
        expect_eq("P(37 | dispari)", odd.prob("37").unwrap().clone(), p(1, 45))?;
        expect_eq("P(37 | pari)", even.prob("37").unwrap().clone(), p(0, 1))?;

        let layer = t.first_layer();
        let factor = bayes_factor(layer.p("37", "dispari").unwrap(), layer.p("other", "dispari").unwrap())
            .map_err(|e| e.to_string())?;
        expect_eq("BTF", factor.clone(), BayesFactor::Finite(Rational::frac(89, 44)))?;
        let prior = odds_from_distribution(t.prior(), "37", "other").map_err(|e| e.to_string())?;
        expect_eq("prior odds", prior.clone(), Odds::new(1u32, 89u32).unwrap())?;
        let post = update_odds(&prior, &factor).map_err(|e| e.to_string())?;
        expect_eq("posterior odds", post.clone(), Odds::new(1u32, 44u32).unwrap())?;
        expect_eq("odds route", distribution_from_odds(&post, "37", "other").unwrap(), odd)
    })();
    report("AC09", "tombola: P('37'|dispari)=1/45, P('37'|pari)=0, 1:89 x 89/44 = 1:44", result);
}

#[test]
fn ac10_prenatal() {
    let result = (|| {
        let s = builtin_scenario("prenatal").unwrap();
        let m = sequential_posterior(&s, &EvidenceSequence::new(["m"])).map_err(|e| e.to_string())?;
        let f = sequential_posterior(&s, &EvidenceSequence::new(["f"])).map_err(|e| e.to_string())?;
        let cells = prenatal_cells();
        let oracle_m = &cells[0][0] / (&cells[0][0] + &cells[1][0]);
        let oracle_f = &cells[1][1] / (&cells[0][1] + &cells[1][1]);
        expect_eq("oracle P(M|m)", oracle_m.clone(), big(19, 23))?;
        expect_eq("oracle P(F|f)", oracle_f.clone(), big(16, 17))?;
        expect_eq("P(M|m)", m.prob("M").unwrap().value().as_big().clone(), oracle_m)?;
        expect_eq("P(F|f)", f.prob("F").unwrap().value().as_big().clone(), oracle_f)?;
        if m.prob("M").unwrap() < f.prob("F").unwrap() {
            Ok(())
        } else {
            Err("expected P(M|m) < P(F|f)".into())
        }
    })();
    report("AC10", "prenatal: P(M|m)=19/23 < P(F|f)=16/17", result);
}

#[test]
fn ac11_rule_of_succession() {
    let result = (|| {
        expect_eq("(0,0)", laplace_succession(0, 0).unwrap().exact, p(1, 2))?;
        for n in 0..=100i64 {
            for x in 0..=n {
                let got = laplace_succession(x as u64, n as u64).map_err(|e| e.to_string())?;
                expect_eq(&format!("({x},{n})"), got.exact, p(x + 1, n + 2))?;
            }
        }
        Ok(())
    })();
    report("AC11", "succession (x+1)/(n+2) for all x <= n <= 100", result);
}

fn mc_config(strategy: Strategy) -> SimConfig {
    let tastes = witches().second_layer().unwrap().clone();
    SimConfig { seed: MC_SEED, trials: MC_TRIALS, composition: Composition::new(14, 21).unwrap(), tastes, strategy }
}

#[test]
fn ac12_monte_carlo_agrees_with_exact_values() {
    let result = (|| {
        let tastes = witches().second_layer().unwrap().clone();
        for (name, strategy) in [
            ("deterministic", optimal_strategy(&tastes).unwrap()),
            ("medallion", Strategy::medallion(&tastes).unwrap()),
        ] {
            let cfg = mc_config(strategy);
            let mut first = Vec::new();
            let summary = write_jsonl(&cfg, false, &mut first).map_err(|e| e.to_string())?;
            let mut second = Vec::new();
            write_jsonl(&cfg, false, &mut second).map_err(|e| e.to_string())?;
            if first != second {
                return Err(format!("{name}: reports differ for the same seed"));
            }
            let v = &summary.violet_frequency;
            if !v.within(SIGMAS) {
                return Err(format!("{name}: violet frequency {} vs {} (z = {:.2})", v.frequency, v.expected, v.z));
            }
            for (hat, check) in &summary.anger_by_hat {
                if !check.within(SIGMAS) {
                    return Err(format!(
                        "{name}: anger on {hat} {} vs {} (z = {:.2})",
                        check.frequency, check.expected, check.z
                    ));
                }
            }
        }

        let calib = monte_carlo_posterior_check(MC_SEED, &witches(), "V14", 10, 10_000, 10).map_err(|e| e.to_string())?;
        let again = monte_carlo_posterior_check(MC_SEED, &witches(), "V14", 10, 10_000, 10).map_err(|e| e.to_string())?;
        if serde_json::to_string(&calib).unwrap() != serde_json::to_string(&again).unwrap() {
            return Err("calibration reports differ for the same seed".into());
        }
        for bin in &calib.bins {
            if bin.z > SIGMAS {
                return Err(format!(
                    "calibration bin [{}, {}): observed {} vs mean posterior {} (z = {:.2})",
                    bin.lower, bin.upper, bin.observed_frequency, bin.mean_posterior, bin.z
                ));
            }
        }
        Ok(())
    })();
    report("AC12", "Monte Carlo (seed 42, 1e5 days): hats, anger, calibration within 3 sigma; reproducible", result);
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn play_transcript() -> Vec<String> {
    let service = SessionService::in_memory();
    std::fs::read_to_string(fixture("session_transcript.jsonl"))
        .unwrap()
        .lines()
        .map(|line| service.handle_json(line).to_json())
        .collect()
}

#[test]
fn ac13_session_replay() {
    let result = (|| {
        let first = play_transcript();
        expect_eq("commands", first.len(), 30)?;
        let second = play_transcript();
        expect_eq("second replay", &second, &first)?;

        let golden_path = fixture("session_transcript.responses.jsonl");
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&golden_path, first.join("\n") + "\n").unwrap();
        }
        let golden = std::fs::read_to_string(&golden_path).map_err(|e| e.to_string())?;
        let golden: Vec<String> = golden.lines().map(str::to_string).collect();
        expect_eq("recorded responses", &first, &golden)?;

        // lines 7 and 9 are state() around a what_if
        expect_eq("what_if leaves state untouched", &first[6], &first[8])?;
        let state: serde_json::Value = serde_json::from_str(&first[6]).unwrap();
        expect_eq("posterior after NNNN", state["result"]["posterior"][0]["exact"].as_str(), Some("16/17"))?;
        let what_if: serde_json::Value = serde_json::from_str(&first[7]).unwrap();
        expect_eq("what_if predictive", what_if["result"]["hats"].as_str(), Some("NNNNVVVVVVVVVV"))?;

        // empty what_if mirrors state
        let state: serde_json::Value = serde_json::from_str(&first[16]).unwrap();
        let empty: serde_json::Value = serde_json::from_str(&first[17]).unwrap();
        for key in ["posterior", "predictive", "taste_predictive"] {
            expect_eq(key, &empty["result"][key], &state["result"][key])?;
        }
        Ok(())
    })();
    report("AC13", "30-command session transcript replays byte-identically; what_if is side-effect-free", result);
}
