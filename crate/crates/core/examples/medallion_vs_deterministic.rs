//! Serving food to a violet-hatted witch: always Sweet, or follow the
//! medallion? Exact anger probabilities and the 7 x 7 chessboard count.
//!
//! cargo run -p witchbayes --example medallion_vs_deterministic

use witchbayes::decision::{anger_probability, optimal_strategy, Chessboard, Strategy};
use witchbayes::inference::WitchConfig;

fn main() -> witchbayes::Result<()> {
    let tastes = WitchConfig::default().taste_table()?;
    let deterministic = optimal_strategy(&tastes)?;
    let medallion = Strategy::medallion(&tastes)?;

    for (name, strategy) in [("deterministic", &deterministic), ("medallion", &medallion)] {
        let n = anger_probability(strategy, &tastes, "N")?;
        let v = anger_probability(strategy, &tastes, "V")?;
        println!("{name:<14} anger|N = {n:<5} anger|V = {v} ({})", v.to_decimal());
    }

    // Seven violet witches (six like Sweet) against seven medallion faces
    // (six say Sweet). Each of the 49 cells is equally likely.
    let board = Chessboard::new(&[("Sweet", 6), ("Salty", 1)], &[("Sweet", 6), ("Salty", 1)]);
    for row in &board.angry {
        let line: String = row.iter().map(|&a| if a { 'x' } else { '.' }).collect();
        println!("  {line}");
    }
    let count = board.count();
    println!("satisfied {} / angry {}", count.satisfied, count.angry);
    println!("strategy JSON: {}", serde_json::to_string(&medallion).unwrap());
    Ok(())
}
