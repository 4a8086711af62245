//! Seeded simulation of the cave checked against the exact probabilities,
//! plus a calibration check of the posterior itself.
//!
//! cargo run --release -p witchbayes --example monte_carlo

use witchbayes::decision::Strategy;
use witchbayes::inference::{builtin_scenario, WitchConfig};
use witchbayes::simulator::{monte_carlo_posterior_check, run_simulation, Composition, SimConfig};

fn main() -> witchbayes::Result<()> {
    let tastes = WitchConfig::default().taste_table()?;
    let cfg = SimConfig {
        seed: 42,
        trials: 100_000,
        composition: Composition::new(14, 21)?,
        strategy: Strategy::medallion(&tastes)?,
        tastes,
    };
    let summary = run_simulation(&cfg, |_| {})?;
    let v = &summary.violet_frequency;
    println!("violet hats  {:.5} vs {} (z = {:.2})", v.frequency, v.expected, v.z);
    for (hat, c) in &summary.anger_by_hat {
        println!("anger | {hat}    {:.5} vs {} (z = {:.2})", c.frequency, c.expected, c.z);
    }

    // Draw a composition from the prior, watch ten hats, and bin the
    // posterior of V14 against how often V14 was in fact the truth.
    let report = monte_carlo_posterior_check(7, &builtin_scenario("witches")?, "V14", 10, 20_000, 10)?;
    println!("\nposterior bin      runs   mean P(V14)   observed");
    for bin in report.bins.iter().filter(|b| b.runs > 0) {
        println!(
            "[{:.1}, {:.1})   {:>6}   {:>11.4}   {:>8.4}",
            bin.lower, bin.upper, bin.runs, bin.mean_posterior, bin.observed_frequency
        );
    }
    println!("all within 3 sigma: {}", summary.within(3.0) && report.within(3.0));
    Ok(())
}
