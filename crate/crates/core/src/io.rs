//! Edge-list text, JSON and DOT formats for [`Graph`].
//!
//! Edge list: one `u v` pair per line, `#` starts a comment. A leading
//! `# vertices N` comment fixes the vertex count so isolated vertices survive
//! a round trip; without it the count is one more than the largest id.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::graph::{Graph, VertexLabel};

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("# vertices {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("string write");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if let Some(rest) = raw.trim().strip_prefix('#') {
            let mut words = rest.split_whitespace();
            if words.next() == Some("vertices") {
                let n = words.next().and_then(|w| w.parse::<usize>().ok()).ok_or_else(|| {
                    ParseError::Line {
                        line: line_no,
                        msg: "malformed `# vertices N` directive".into(),
                    }
                })?;
                declared = Some(n);
            }
            continue;
        }
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: String| ParseError::Line { line: line_no, msg };
        if fields.len() != 2 {
            return Err(bad(format!("expected `u v`, found {} fields", fields.len())));
        }
        let u: usize = fields[0].parse().map_err(|_| bad(format!("bad vertex `{}`", fields[0])))?;
        let v: usize = fields[1].parse().map_err(|_| bad(format!("bad vertex `{}`", fields[1])))?;
        if u == v {
            return Err(bad(format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < implied => {
            return Err(ParseError::Schema(format!(
                "declared {n} vertices but ids reach {}",
                implied - 1
            )))
        }
        Some(n) => n,
        None => implied,
    };
    Ok(Graph::new(n, edges)?)
}

/// Serde mirror of the JSON graph format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g
                .labels()
                .iter()
                .map(|(v, l)| (v.to_string(), l.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = ParseError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        let g = Graph::new(j.n, j.edges.iter().map(|e| (e[0], e[1])))?;
        let mut labels = Vec::with_capacity(j.labels.len());
        for (k, v) in j.labels {
            let id: usize = k
                .parse()
                .map_err(|_| ParseError::Schema(format!("label key `{k}` is not a vertex id")))?;
            labels.push((id, VertexLabel::parse(&v)));
        }
        Ok(g.with_labels(labels)?)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

pub fn parse_json(text: &str) -> Result<Graph, ParseError> {
    let j: GraphJson = serde_json::from_str(text)?;
    Graph::try_from(j)
}

/// Guesses the format from the first non-blank character.
pub fn parse_any(text: &str) -> Result<Graph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph \"{name}\" {{\n");
    for v in g.vertices() {
        match g.label(v) {
            Some(l) => writeln!(out, "  {v} [label=\"{l}\"];"),
            None => writeln!(out, "  {v};"),
        }
        .expect("string write");
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").expect("string write");
    }
    out.push_str("}\n");
    out
}
