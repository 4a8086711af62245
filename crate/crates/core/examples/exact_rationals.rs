//! Exact arithmetic underneath everything: fractions never round until they
//! are printed.
//!
//! cargo run -p witchbayes --example exact_rationals

use witchbayes::probability::{normalize, total_probability};
use witchbayes::{Probability, Rational};

fn main() -> witchbayes::Result<()> {
    let third = Rational::frac(1, 3);
    let sum: Rational = std::iter::repeat_n(third, 3).sum();
    println!("1/3 + 1/3 + 1/3 = {sum}");

    let tiny = Rational::frac(1, 2).pow(64);
    println!("(1/2)^64 = {tiny}");
    println!("as decimal: {}", tiny.to_decimal(6));

    let weights = normalize([("a", Rational::integer(2)), ("b", Rational::integer(3)), ("c", Rational::integer(5))])?;
    println!("normalize(2, 3, 5) = {:?}", weights.probabilities().map(|p| p.to_string()).collect::<Vec<_>>());

    let conditionals = [Probability::frac(1, 2), Probability::frac(1, 3), Probability::frac(1, 5)];
    println!("total probability = {}", total_probability(&conditionals, &weights)?);

    // ties round to the even digit
    for s in ["1/8", "3/8", "2049/3075"] {
        let r: Rational = s.parse()?;
        println!("{s:>10} -> {} (2 digits: {})", r.to_decimal(6), r.to_decimal(2));
    }
    Ok(())
}
