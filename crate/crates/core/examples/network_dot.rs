//! The hypothesis -> hat -> taste network as Graphviz DOT, annotated with the
//! beliefs after four black hats.
//!
//! cargo run -p witchbayes --example network_dot | dot -Tsvg > witches.svg

use witchbayes::inference::{builtin_scenario, sequential_posterior, EvidenceSequence};
use witchbayes::network::diagram_from_scenario;

fn main() -> witchbayes::Result<()> {
    let witches = builtin_scenario("witches")?;
    let seq = EvidenceSequence::parse("NNNN", &witches)?;
    let post = sequential_posterior(&witches, &seq)?;
    let diagram = diagram_from_scenario(&witches, Some(&post), Some("N"))?;
    print!("{}", diagram.to_dot());
    eprintln!("{} nodes, {} edges", diagram.nodes.len(), diagram.edges.len());
    Ok(())
}
