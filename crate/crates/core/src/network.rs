//! Two-layer Bayesian-network diagrams of a scenario, exported as Graphviz
//! DOT or versioned JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inference::{predictive_from_posterior, LikelihoodTable, Scenario};
use crate::probability::{total_probability, Distribution, Probability};
use crate::rational::Rational;

pub const DIAGRAM_FORMAT: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Hypothesis,
    Outcome,
    SecondOutcome,
}

impl Layer {
    fn prefix(self) -> &'static str {
        match self {
            Layer::Hypothesis => "h",
            Layer::Outcome => "o",
            Layer::SecondOutcome => "s",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetNode {
    pub id: String,
    pub label: String,
    pub layer: Layer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<Probability>,
    #[serde(default)]
    pub observed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetEdge {
    pub from: String,
    pub to: String,
    pub p: Probability,
    pub weight_class: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetDiagram {
    pub format: u32,
    pub name: String,
    pub nodes: Vec<NetNode>,
    pub edges: Vec<NetEdge>,
}

/// Thickness bucket: below 0.1, 0.3, 0.5, 0.8, then up to 1.
pub fn weight_class(p: &Probability) -> u8 {
    let thresholds = [(1, 10), (3, 10), (1, 2), (4, 5)];
    thresholds
        .iter()
        .position(|&(n, d)| p.value() < &Rational::frac(n, d))
        .map_or(5, |i| i as u8 + 1)
}

fn node_id(layer: Layer, label: &str) -> String {
    format!("{}:{label}", layer.prefix())
}

fn push_layer_edges(edges: &mut Vec<NetEdge>, table: &LikelihoodTable, from: Layer, to: Layer) {
    for (h, row) in table.hypotheses().iter().zip(table.rows()) {
        for (o, p) in table.outcomes().iter().zip(row) {
            edges.push(NetEdge {
                from: node_id(from, h),
                to: node_id(to, o),
                p: p.clone(),
                weight_class: weight_class(p),
            });
        }
    }
}

/// Builds the diagram. With a posterior, hypothesis nodes carry it and the
/// outcome layers carry the matching predictive probabilities; `evidence`
/// marks one outcome node as observed.
pub fn diagram_from_scenario(
    scenario: &Scenario,
    posterior: Option<&Distribution>,
    evidence: Option<&str>,
) -> Result<NetDiagram> {
    if let Some(post) = posterior {
        if !post.labels().eq(scenario.hypotheses().iter().map(String::as_str)) {
            return Err(Error::LabelMismatch);
        }
    }
    let first = scenario.first_layer();
    let second = scenario.second_layer();

    let next = posterior.map(|p| predictive_from_posterior(scenario, p)).transpose()?;
    let second_pred = match (&next, second) {
        (Some(next), Some(t)) => Some(
            t.outcomes()
                .iter()
                .map(|s| total_probability(&t.column(s)?, next))
                .collect::<Result<Vec<_>>>()?,
        ),
        _ => None,
    };

    let mut nodes = Vec::new();
    for (i, h) in scenario.hypotheses().iter().enumerate() {
        nodes.push(NetNode {
            id: node_id(Layer::Hypothesis, h),
            label: h.clone(),
            layer: Layer::Hypothesis,
            annotation: posterior.map(|p| p.entries()[i].1.clone()),
            observed: false,
        });
    }
    for (i, o) in first.outcomes().iter().enumerate() {
        nodes.push(NetNode {
            id: node_id(Layer::Outcome, o),
            label: o.clone(),
            layer: Layer::Outcome,
            annotation: next.as_ref().map(|d| d.entries()[i].1.clone()),
            observed: false,
        });
    }
    if let Some(t) = second {
        for (i, s) in t.outcomes().iter().enumerate() {
            nodes.push(NetNode {
                id: node_id(Layer::SecondOutcome, s),
                label: s.clone(),
                layer: Layer::SecondOutcome,
                annotation: second_pred.as_ref().map(|v| v[i].clone()),
                observed: false,
            });
        }
    }
    if let Some(label) = evidence {
        let node = nodes
            .iter_mut()
            .find(|n| n.layer != Layer::Hypothesis && n.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        node.observed = true;
    }

    let mut edges = Vec::new();
    push_layer_edges(&mut edges, first, Layer::Hypothesis, Layer::Outcome);
    if let Some(t) = second {
        push_layer_edges(&mut edges, t, Layer::Outcome, Layer::SecondOutcome);
    }

    Ok(NetDiagram { format: DIAGRAM_FORMAT, name: scenario.name().to_string(), nodes, edges })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl NetDiagram {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<NetDiagram> {
        let d: NetDiagram = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if d.format != DIAGRAM_FORMAT {
            return Err(Error::Parse(format!("unsupported diagram format {}", d.format)));
        }
        Ok(d)
    }

    /// Graphviz text. Pen width equals the weight class, class 1 edges are
    /// dashed, observed nodes get a check mark.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(&self.name));
        out.push_str("  rankdir=TB;\n  node [shape=ellipse, fontname=\"Helvetica\"];\n");
        for layer in [Layer::Hypothesis, Layer::Outcome, Layer::SecondOutcome] {
            let ids: Vec<String> = self
                .nodes
                .iter()
                .filter(|n| n.layer == layer)
                .map(|n| format!("\"{}\"", dot_escape(&n.id)))
                .collect();
            if !ids.is_empty() {
                let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
            }
        }
        for n in &self.nodes {
            let mut label = dot_escape(&n.label);
            if n.observed {
                label.push_str(" \u{2713}");
            }
            if let Some(a) = &n.annotation {
                let _ = write!(label, "\\n{a}");
            }
            let shape = if n.layer == Layer::Hypothesis { "box" } else { "ellipse" };
            let style = if n.observed { ", style=bold" } else { "" };
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{}\", shape={shape}{style}];",
                dot_escape(&n.id),
                label
            );
        }
        for e in &self.edges {
            let style = if e.weight_class == 1 { ", style=dashed" } else { "" };
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\", penwidth={}{style}];",
                dot_escape(&e.from),
                dot_escape(&e.to),
                e.p,
                e.weight_class
            );
        }
        out.push_str("}\n");
        out
    }
}
