//! The odds form of Bayes' rule on the tombola: the announcer says the drawn
//! number is odd. Did "37" come out?
//!
//! cargo run -p witchbayes --example odds_and_factors

use witchbayes::inference::{builtin_scenario, sequential_posterior, EvidenceSequence};
use witchbayes::probability::{bayes_factor, odds_from_distribution, update_odds};

fn main() -> witchbayes::Result<()> {
    let tombola = builtin_scenario("tombola")?;
    let table = tombola.first_layer();

    let prior_odds = odds_from_distribution(tombola.prior(), "37", "other")?;
    let factor = bayes_factor(table.p("37", "dispari")?, table.p("other", "dispari")?)?;
    let posterior_odds = update_odds(&prior_odds, &factor)?;
    println!("prior odds    {prior_odds}");
    println!("Bayes factor  {factor}");
    println!("posterior     {posterior_odds} -> P(37) = {}", posterior_odds.probability_favor());

    let direct = sequential_posterior(&tombola, &EvidenceSequence::new(["dispari"]))?;
    println!("by normalization P(37 | dispari) = {}", direct.prob("37")?);

    // an even number rules "37" out entirely
    let even = sequential_posterior(&tombola, &EvidenceSequence::new(["pari"]))?;
    println!("P(37 | pari) = {}", even.prob("37")?);
    Ok(())
}
