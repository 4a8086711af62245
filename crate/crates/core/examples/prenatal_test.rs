//! A prenatal sex test that is right 95% of the time for boys and 80% for
//! girls. Which reading is more trustworthy?
//!
//! cargo run -p witchbayes --example prenatal_test

use witchbayes::inference::{builtin_scenario, sequential_posterior, EvidenceSequence};

fn main() -> witchbayes::Result<()> {
    let prenatal = builtin_scenario("prenatal")?;
    let says_m = sequential_posterior(&prenatal, &EvidenceSequence::new(["m"]))?;
    let says_f = sequential_posterior(&prenatal, &EvidenceSequence::new(["f"]))?;
    let m = says_m.prob("M")?;
    let f = says_f.prob("F")?;
    println!("reading m: P(boy)  = {m} = {}", m.to_decimal());
    println!("reading f: P(girl) = {f} = {}", f.to_decimal());
    println!("the less accurate side of the test gives the more reliable reading: {}", m < f);
    Ok(())
}
