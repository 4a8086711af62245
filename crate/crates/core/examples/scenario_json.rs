//! Scenarios are plain JSON documents. Here: a cave of 21 witches holding
//! anywhere from 1 to 20 violet hats, each count equally likely a priori.
//!
//! cargo run -p witchbayes --example scenario_json

use witchbayes::inference::{build_witch_scenario, predictive, sequential_posterior, EvidenceSequence, Scenario, WitchConfig};

fn main() -> witchbayes::Result<()> {
    let scenario = build_witch_scenario(&WitchConfig::all_mixed(21))?;
    let json = scenario.to_json();
    println!("{}", json.lines().take(12).collect::<Vec<_>>().join("\n"));
    println!("  ...");

    let reloaded = Scenario::from_json(&json)?;
    assert_eq!(reloaded, scenario);

    let seq = EvidenceSequence::parse("VVVVVVVVVV", &reloaded)?;
    let post = sequential_posterior(&reloaded, &seq)?;
    let (best, p) = post.entries().iter().max_by(|a, b| a.1.cmp(&b.1)).unwrap();
    println!("after ten violet hats the most likely composition is {best} with P = {}", p.to_decimal());
    println!("P(next hat violet) = {}", predictive(&reloaded, &seq, "V")?.to_decimal());
    Ok(())
}
