//! After ten violet hats in a row, how likely is the next hat to be violet?
//!
//! cargo run -p witchbayes --example predictive_violet_run

use witchbayes::inference::{builtin_scenario, predictive, sequential_posterior, EvidenceSequence};

fn main() -> witchbayes::Result<()> {
    let witches = builtin_scenario("witches")?;
    for n in [0, 1, 2, 5, 10] {
        let seq = EvidenceSequence::new(std::iter::repeat_n("V", n));
        let post = sequential_posterior(&witches, &seq)?;
        let next = predictive(&witches, &seq, "V")?;
        println!(
            "{n:>2} violet: P(V14) = {:<10} P(next V) = {} = {}",
            post.prob("V14")?.to_string(),
            next,
            next.to_decimal()
        );
    }
    // the prediction creeps toward 2/3 but never passes it
    Ok(())
}
