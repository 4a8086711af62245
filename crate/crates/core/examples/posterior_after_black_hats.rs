//! Day by day posterior over the two compositions while black hats keep
//! coming out of the cave.
//!
//! cargo run -p witchbayes --example posterior_after_black_hats

use witchbayes::inference::{builtin_scenario, update_posterior, EvidenceSequence};

fn main() -> witchbayes::Result<()> {
    let witches = builtin_scenario("witches")?;
    let mut belief = witches.prior().clone();
    println!("day  hat  P(V7)            P(V14)");
    for day in 1..=4 {
        belief = update_posterior(&witches, &belief, &EvidenceSequence::new(["N"]))?;
        let v7 = belief.prob("V7")?;
        let v14 = belief.prob("V14")?;
        println!("{day:>3}  N    {:<7} {:<8} {:<7} {}", v7.to_string(), v7.to_decimal(), v14.to_string(), v14.to_decimal());
    }
    Ok(())
}
