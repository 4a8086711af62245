//! Rule of succession: after x successes in n trials the next success has
//! probability (x + 1) / (n + 2).
//!
//! cargo run -p witchbayes --example succession -- 10 10

use witchbayes::inference::laplace_succession;

fn main() -> witchbayes::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let cases = match args.as_slice() {
        [x, n] => vec![(*x, *n)],
        _ => vec![(0, 0), (1, 1), (10, 10), (50, 100), (1000, 1000)],
    };
    for (x, n) in cases {
        let s = laplace_succession(x, n)?;
        let naive = s.approximation.map(|a| a.to_string()).unwrap_or_else(|| "undefined".into());
        println!("x = {x:>4}, n = {n:>4}: {:<12} ({})  x/n = {naive}", s.exact.to_string(), s.exact.to_decimal());
    }
    Ok(())
}
