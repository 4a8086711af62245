//! Exact discrete Bayesian inference and decision analysis for the witches
//! of the cave.
//!
//! Twenty-one witches live in a cave, some with black hats (`N`) and some
//! with violet hats (`V`). Every morning one witch is drawn at random and
//! her hat is left outside; the villagers must guess the cave's composition
//! (seven or fourteen violet hats) and decide what food to serve. Every
//! black-hatted witch likes salty food, six violet-hatted witches in seven
//! like sweet food.
//!
//! All arithmetic is on exact rationals; floats only appear when rendering.
//!
//! ```
//! use witchbayes::inference::{build_witch_scenario, predictive, sequential_posterior, EvidenceSequence, WitchConfig};
//! use witchbayes::Probability;
//!
//! let witches = build_witch_scenario(&WitchConfig::default()).unwrap();
//! let four_black = EvidenceSequence::parse("NNNN", &witches).unwrap();
//! let post = sequential_posterior(&witches, &four_black).unwrap();
//! assert_eq!(post.prob("V7").unwrap(), &Probability::frac(16, 17));
//!
//! let ten_violet = EvidenceSequence::parse("VVVVVVVVVV", &witches).unwrap();
//! let next_violet = predictive(&witches, &ten_violet, "V").unwrap();
//! assert_eq!(next_violet, Probability::frac(2049, 3075));
//! assert_eq!(next_violet.to_decimal(), "0.666341");
//! ```
//!
//! Modules:
//!
//! - [`rational`], [`probability`]: exact numbers, distributions, odds and
//!   Bayes factors.
//! - [`inference`]: scenarios, sequential posteriors, predictive
//!   probabilities, the rule of succession and the builtin scenarios.
//! - [`decision`]: serving strategies and their anger probabilities.
//! - [`simulator`], [`rng`]: seeded Monte Carlo of the daily draw.
//! - [`network`]: diagram export (DOT and JSON).
//! - [`session`]: event-sourced interactive games and their JSON protocol.

pub mod decision;
pub mod error;
pub mod inference;
pub mod network;
pub mod probability;
pub mod rational;
pub mod rng;
pub mod session;
pub mod simulator;

pub use error::{Error, Result};
pub use probability::{BayesFactor, Distribution, Odds, Probability};
pub use rational::Rational;
