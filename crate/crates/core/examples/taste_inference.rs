//! The second layer: from hats to tastes, and back from a taste to a hat.
//!
//! cargo run -p witchbayes --example taste_inference

use witchbayes::inference::{
    builtin_scenario, infer_hat_from_taste, predictive_distribution, second_layer_distribution, EvidenceSequence,
    SALTY,
};
use witchbayes::Distribution;

fn main() -> witchbayes::Result<()> {
    let witches = builtin_scenario("witches")?;

    for text in ["", "NNNN", "VVVVVVVVVV"] {
        let seq = EvidenceSequence::parse(text, &witches)?;
        let tastes = second_layer_distribution(&witches, &seq)?;
        println!("after {:<10} Sweet {:<10} Salty {}", format!("{text:?}"), tastes.prob("Sweet")?.to_string(), tastes.prob("Salty")?);
    }

    // The drawn witch liked the salty food. Which hat was she wearing?
    let v14 = witches.with_prior(Distribution::point_mass(["V7", "V14"], "V14")?)?;
    let hats = predictive_distribution(&v14, &EvidenceSequence::empty())?;
    let back = infer_hat_from_taste(&witches, &hats, SALTY)?;
    println!("V14 certain:   P(N | Salty) = {}, P(V | Salty) = {}", back.prob("N")?, back.prob("V")?);

    let even = Distribution::uniform(["N", "V"])?;
    let back = infer_hat_from_taste(&witches, &even, SALTY)?;
    println!("hats 50 / 50:  P(N | Salty) = {}, P(V | Salty) = {}", back.prob("N")?, back.prob("V")?);
    Ok(())
}
