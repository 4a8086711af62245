#![allow(dead_code)]

//! Brute-force joint-table enumeration, independent of the library's
//! posterior and predictive code paths. Only the raw table entries are read
//! from the scenario.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use witchbayes::inference::Scenario;

pub fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub struct JointOracle {
    pub hypotheses: Vec<String>,
    pub outcomes: Vec<String>,
    pub prior: Vec<BigRational>,
    pub first: Vec<Vec<BigRational>>,
    pub seconds: Vec<String>,
    pub second: Vec<Vec<BigRational>>,
}

impl JointOracle {
    pub fn from_scenario(s: &Scenario) -> Self {
        let raw = |rows: &[Vec<witchbayes::Probability>]| -> Vec<Vec<BigRational>> {
            rows.iter().map(|r| r.iter().map(|p| p.value().as_big().clone()).collect()).collect()
        };
        JointOracle {
            hypotheses: s.hypotheses().to_vec(),
            outcomes: s.outcomes().to_vec(),
            prior: s.prior().probabilities().map(|p| p.value().as_big().clone()).collect(),
            first: raw(s.first_layer().rows()),
            seconds: s.second_layer().map(|t| t.outcomes().to_vec()).unwrap_or_default(),
            second: s.second_layer().map(|t| raw(t.rows())).unwrap_or_default(),
        }
    }

    pub fn outcome(&self, label: &str) -> usize {
        self.outcomes.iter().position(|o| o == label).unwrap()
    }

    /// Every outcome sequence of length `len`, in lexicographic order.
    pub fn all_sequences(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..self.outcomes.len()).map(move |o| {
                        let mut next = prefix.clone();
                        next.push(o);
                        next
                    })
                })
                .collect();
        }
        out
    }

    /// Joint weight of (hypothesis, a full sequence of outcomes).
    fn joint(&self, h: usize, seq: &[usize]) -> BigRational {
        seq.iter().fold(self.prior[h].clone(), |acc, &o| acc * &self.first[h][o])
    }

    /// Posterior over hypotheses: every (hypothesis, sequence) cell whose
    /// sequence equals the observation, normalized.
    pub fn posterior(&self, observed: &[usize]) -> Option<Vec<BigRational>> {
        let mut mass = vec![BigRational::zero(); self.hypotheses.len()];
        for (h, slot) in mass.iter_mut().enumerate() {
            for seq in self.all_sequences(observed.len()) {
                if seq == observed {
                    *slot += self.joint(h, &seq);
                }
            }
        }
        let total: BigRational = mass.iter().cloned().sum();
        if total.is_zero() {
            return None;
        }
        Some(mass.into_iter().map(|m| m / &total).collect())
    }

    /// P(next outcome = `next` | observed), from sequences one longer.
    pub fn predictive(&self, observed: &[usize], next: usize) -> Option<BigRational> {
        let mut hit = BigRational::zero();
        let mut total = BigRational::zero();
        for h in 0..self.hypotheses.len() {
            for seq in self.all_sequences(observed.len() + 1) {
                if seq[..observed.len()] != *observed {
                    continue;
                }
                let w = self.joint(h, &seq);
                if seq[observed.len()] == next {
                    hit += &w;
                }
                total += w;
            }
        }
        (!total.is_zero()).then(|| hit / total)
    }

    /// P(second-layer outcome of the next draw = `s` | observed), over
    /// (hypothesis, sequence + next outcome, second outcome) cells.
    pub fn second_predictive(&self, observed: &[usize], s: usize) -> Option<BigRational> {
        let mut hit = BigRational::zero();
        let mut total = BigRational::zero();
        for h in 0..self.hypotheses.len() {
            for seq in self.all_sequences(observed.len() + 1) {
                if seq[..observed.len()] != *observed {
                    continue;
                }
                let last = seq[observed.len()];
                for t in 0..self.seconds.len() {
                    let w = self.joint(h, &seq) * &self.second[last][t];
                    if t == s {
                        hit += &w;
                    }
                    total += w;
                }
            }
        }
        (!total.is_zero()).then(|| hit / total)
    }

    /// Mixture over hypotheses of one draw: P(hat | liked taste) by
    /// enumerating (hypothesis, hat, taste) cells.
    pub fn hat_given_taste(&self, hypothesis_weights: &[BigRational], liked: usize) -> Vec<BigRational> {
        let mut mass = vec![BigRational::zero(); self.outcomes.len()];
        for (h, w) in hypothesis_weights.iter().enumerate() {
            for (hat, slot) in mass.iter_mut().enumerate() {
                *slot += w * &self.first[h][hat] * &self.second[hat][liked];
            }
        }
        let total: BigRational = mass.iter().cloned().sum();
        mass.into_iter().map(|m| m / &total).collect()
    }
}

/// The prenatal test as a four-cell joint table (sex x reading).
pub fn prenatal_cells() -> [[BigRational; 2]; 2] {
    let half = big(1, 2);
    [
        [&half * big(95, 100), &half * big(5, 100)],
        [&half * big(20, 100), &half * big(80, 100)],
    ]
}

pub fn one() -> BigRational {
    BigRational::one()
}
