//! Exact probability arithmetic: distributions, odds, Bayes factors, and the
//! two equivalent update routes (normalized posterior and odds times factor).

use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{Rational, DEFAULT_SIGNIFICANT_DIGITS};

/// A rational in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Probability(Rational);

impl Probability {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() || value > Rational::one() {
            return Err(Error::InvalidProbability(value.to_string()));
        }
        Ok(Probability(value))
    }

    /// `num/den` for literals. Panics when the value is not a probability.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(Rational::frac(num, den)).expect("not a probability")
    }

    pub fn zero() -> Self {
        Probability(Rational::zero())
    }

    pub fn one() -> Self {
        Probability(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn complement(&self) -> Self {
        Probability(Rational::one() - &self.0)
    }

    pub fn to_decimal(&self) -> String {
        self.0.to_decimal(DEFAULT_SIGNIFICANT_DIGITS)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl Mul<&Probability> for &Probability {
    type Output = Probability;
    fn mul(self, rhs: &Probability) -> Probability {
        Probability(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({})", self.0)
    }
}

impl std::str::FromStr for Probability {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Probability::new(s.parse()?)
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Probability {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = Rational::deserialize(deserializer)?;
        Probability::new(r).map_err(serde::de::Error::custom)
    }
}

/// Odds `favor : against` between two exclusive hypotheses.
///
/// Canonical: coprime when both sides are nonzero, and `1:0` / `0:1` for the
/// two certainties.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Odds {
    favor: BigUint,
    against: BigUint,
}

impl Odds {
    pub fn new(favor: impl Into<BigUint>, against: impl Into<BigUint>) -> Result<Self> {
        let favor = favor.into();
        let against = against.into();
        if favor.is_zero() && against.is_zero() {
            return Err(Error::ZeroOdds);
        }
        if favor.is_zero() {
            return Ok(Odds { favor, against: BigUint::one() });
        }
        if against.is_zero() {
            return Ok(Odds { favor: BigUint::one(), against });
        }
        let g = favor.gcd(&against);
        Ok(Odds { favor: favor / &g, against: against / g })
    }

    /// Odds `p_a : p_b` from two nonnegative rationals, not both zero.
    pub fn from_ratio(a: &Rational, b: &Rational) -> Result<Self> {
        if a.is_negative() || b.is_negative() {
            return Err(Error::InvalidProbability(format!("{a}:{b}")));
        }
        // a = an/ad, b = bn/bd  =>  an*bd : bn*ad
        let favor = a.numer() * b.denom();
        let against = b.numer() * a.denom();
        Odds::new(to_biguint(favor), to_biguint(against))
    }

    pub fn favor(&self) -> &BigUint {
        &self.favor
    }

    pub fn against(&self) -> &BigUint {
        &self.against
    }

    pub fn is_certain_favor(&self) -> bool {
        self.against.is_zero()
    }

    pub fn is_certain_against(&self) -> bool {
        self.favor.is_zero()
    }

    /// Probability of the first hypothesis, `favor / (favor + against)`.
    pub fn probability_favor(&self) -> Probability {
        let total = &self.favor + &self.against;
        Probability(
            Rational::new(to_bigint(self.favor.clone()), to_bigint(total))
                .expect("odds total is nonzero"),
        )
    }
}

fn to_biguint(n: BigInt) -> BigUint {
    n.to_biguint().expect("nonnegative")
}

fn to_bigint(n: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n)
}

impl fmt::Display for Odds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.favor, self.against)
    }
}

impl fmt::Debug for Odds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Odds({}:{})", self.favor, self.against)
    }
}

/// Ratio of the likelihoods of one piece of evidence under two hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BayesFactor {
    Finite(Rational),
    /// The second likelihood is zero and the first is not.
    Infinite,
}

impl BayesFactor {
    pub fn finite(value: Rational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InvalidConfig(format!("negative Bayes factor {value}")));
        }
        Ok(BayesFactor::Finite(value))
    }

    pub fn one() -> Self {
        BayesFactor::Finite(Rational::one())
    }

    /// Product of two factors; the global factor of a sequence of
    /// independent pieces of evidence is the product of the partial ones.
    pub fn combine(&self, other: &BayesFactor) -> Result<BayesFactor> {
        use BayesFactor::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Ok(Finite(a * b)),
            (Infinite, Finite(x)) | (Finite(x), Infinite) if x.is_zero() => Err(Error::Indeterminate),
            _ => Ok(Infinite),
        }
    }
}

impl fmt::Display for BayesFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BayesFactor::Finite(r) => fmt::Display::fmt(r, f),
            BayesFactor::Infinite => f.write_str("inf"),
        }
    }
}

/// A finite distribution over labelled outcomes, summing to exactly one.
#[derive(Clone, PartialEq, Eq)]
pub struct Distribution {
    entries: Vec<(String, Probability)>,
}

impl Distribution {
    pub fn new<L: Into<String>>(entries: impl IntoIterator<Item = (L, Probability)>) -> Result<Self> {
        let entries: Vec<(String, Probability)> =
            entries.into_iter().map(|(l, p)| (l.into(), p)).collect();
        check_unique(entries.iter().map(|(l, _)| l.as_str()))?;
        let sum: Rational = entries.iter().map(|(_, p)| p.value()).sum();
        if !sum.is_one() {
            return Err(Error::NotNormalized(sum.to_string()));
        }
        Ok(Distribution { entries })
    }

    pub fn uniform<L: Into<String>>(labels: impl IntoIterator<Item = L>) -> Result<Self> {
        normalize(labels.into_iter().map(|l| (l, Rational::one())))
    }

    /// All mass on `label`, zero on the others (which must include it).
    pub fn point_mass<L: Into<String>>(labels: impl IntoIterator<Item = L>, label: &str) -> Result<Self> {
        let entries: Vec<(String, Probability)> = labels
            .into_iter()
            .map(Into::into)
            .map(|l: String| {
                let p = if l == label { Probability::one() } else { Probability::zero() };
                (l, p)
            })
            .collect();
        if !entries.iter().any(|(l, _)| l == label) {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        Distribution::new(entries)
    }

    pub fn entries(&self) -> &[(String, Probability)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(l, _)| l.as_str())
    }

    pub fn probabilities(&self) -> impl Iterator<Item = &Probability> {
        self.entries.iter().map(|(_, p)| p)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.entries.iter().position(|(l, _)| l == label)
    }

    pub fn get(&self, label: &str) -> Option<&Probability> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }

    pub fn prob(&self, label: &str) -> Result<&Probability> {
        self.get(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

impl fmt::Debug for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(l, p)| (l, p.value()))).finish()
    }
}

pub(crate) fn check_unique<'a>(labels: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
    }
    Ok(())
}

/// Rescales nonnegative weights so they sum to one, keeping label order.
pub fn normalize<L: Into<String>>(weights: impl IntoIterator<Item = (L, Rational)>) -> Result<Distribution> {
    let weights: Vec<(String, Rational)> = weights.into_iter().map(|(l, w)| (l.into(), w)).collect();
    if let Some((l, _)) = weights.iter().find(|(_, w)| w.is_negative()) {
        return Err(Error::NegativeWeight(l.clone()));
    }
    let total: Rational = weights.iter().map(|(_, w)| w).sum();
    if total.is_zero() {
        return Err(Error::AllZeroWeights);
    }
    Distribution::new(
        weights
            .into_iter()
            .map(|(l, w)| (l, Probability(w / &total))),
    )
}

pub fn bayes_factor(likelihood_1: &Probability, likelihood_2: &Probability) -> Result<BayesFactor> {
    match (likelihood_1.is_zero(), likelihood_2.is_zero()) {
        (true, true) => Err(Error::BothZero),
        (false, true) => Ok(BayesFactor::Infinite),
        _ => Ok(BayesFactor::Finite(likelihood_1.value() / likelihood_2.value())),
    }
}

/// Posterior odds = factor × prior odds.
pub fn update_odds(prior: &Odds, factor: &BayesFactor) -> Result<Odds> {
    match factor {
        BayesFactor::Infinite => {
            if prior.favor.is_zero() {
                Err(Error::Indeterminate)
            } else {
                Odds::new(1u32, 0u32)
            }
        }
        BayesFactor::Finite(f) => {
            let num = to_biguint(f.numer().clone());
            let den = to_biguint(f.denom().clone());
            let favor = &prior.favor * num;
            let against = &prior.against * den;
            if favor.is_zero() && against.is_zero() {
                // certain prior times a zero factor
                return Err(Error::Indeterminate);
            }
            Odds::new(favor, against)
        }
    }
}

/// `P(H_i | E) = P(E | H_i) P(H_i) / sum_j P(E | H_j) P(H_j)`.
pub fn posterior(prior: &Distribution, likelihoods: &[Probability]) -> Result<Distribution> {
    if likelihoods.len() != prior.len() {
        return Err(Error::LengthMismatch { expected: prior.len(), actual: likelihoods.len() });
    }
    let joint: Vec<(String, Rational)> = prior
        .entries
        .iter()
        .zip(likelihoods)
        .map(|((l, p), lik)| (l.clone(), p.value() * lik.value()))
        .collect();
    normalize(joint).map_err(|e| match e {
        Error::AllZeroWeights => Error::ImpossibleEvidence,
        other => other,
    })
}

/// Weighted mean of `conditionals` under `weights`.
pub fn total_probability(conditionals: &[Probability], weights: &Distribution) -> Result<Probability> {
    if conditionals.len() != weights.len() {
        return Err(Error::LengthMismatch { expected: weights.len(), actual: conditionals.len() });
    }
    let sum = conditionals
        .iter()
        .zip(weights.probabilities())
        .map(|(c, w)| c.value() * w.value())
        .sum();
    Probability::new(sum)
}

pub fn odds_from_distribution(d: &Distribution, label_a: &str, label_b: &str) -> Result<Odds> {
    let a = d.prob(label_a)?;
    let b = d.prob(label_b)?;
    Odds::from_ratio(a.value(), b.value())
}

pub fn distribution_from_odds(o: &Odds, label_a: &str, label_b: &str) -> Result<Distribution> {
    if label_a == label_b {
        return Err(Error::DuplicateLabel(label_a.to_string()));
    }
    let pa = o.probability_favor();
    let pb = pa.complement();
    Distribution::new([(label_a, pa), (label_b, pb)])
}
