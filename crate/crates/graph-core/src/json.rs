//! JSON serialization of graphs.
//!
//! The wire format is
//!
//! ```json
//! {"random":["X1","W"],"fixed":[],
//!  "directed":[["X1","W"]],"bidirected":[["X1","W"]]}
//! ```
//!
//! The loader validates every structural invariant plus identifier syntax
//! for labels, and reports the first violation (for syntax errors, with line
//! and column).  Emission is deterministic: sets are sorted.

use crate::error::GraphError;
use crate::graph::MixedGraph;
use crate::vertex::{VertexId, VertexSet};
use serde::Deserialize;
use serde_json::json;

#[derive(Debug, Deserialize)]
struct GraphJson {
    random: Vec<String>,
    #[serde(default)]
    fixed: Vec<String>,
    #[serde(default)]
    directed: Vec<(String, String)>,
    #[serde(default)]
    bidirected: Vec<(String, String)>,
}

/// Maps a serde_json syntax/shape error to [`GraphError::Json`].
pub(crate) fn json_error(e: serde_json::Error) -> GraphError {
    GraphError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn checked_label(s: &str) -> Result<VertexId, GraphError> {
    let v = VertexId::new(s);
    if s.is_empty() {
        return Err(GraphError::EmptyLabel);
    }
    if !v.is_identifier() {
        return Err(GraphError::InvalidLabel(s.to_owned()));
    }
    Ok(v)
}

/// Parses a graph from its JSON text.
pub fn graph_from_json_str(text: &str) -> Result<MixedGraph, GraphError> {
    let raw: GraphJson = serde_json::from_str(text).map_err(json_error)?;
    let mut random = VertexSet::new();
    for s in &raw.random {
        let v = checked_label(s)?;
        if !random.insert(v.clone()) {
            return Err(GraphError::DuplicateVertex(v));
        }
    }
    let mut fixed = VertexSet::new();
    for s in &raw.fixed {
        let v = checked_label(s)?;
        if !fixed.insert(v.clone()) {
            return Err(GraphError::DuplicateVertex(v));
        }
    }
    MixedGraph::new(
        random,
        fixed,
        raw.directed
            .into_iter()
            .map(|(t, h)| (VertexId::new(t), VertexId::new(h))),
        raw.bidirected
            .into_iter()
            .map(|(a, b)| (VertexId::new(a), VertexId::new(b))),
    )
}

/// Serializes a graph to a deterministic JSON value.
pub fn graph_to_json_value(g: &MixedGraph) -> serde_json::Value {
    json!({
        "random": g.random().iter().map(VertexId::as_str).collect::<Vec<_>>(),
        "fixed": g.fixed().iter().map(VertexId::as_str).collect::<Vec<_>>(),
        "directed": g
            .directed_edges()
            .map(|(t, h)| vec![t.as_str(), h.as_str()])
            .collect::<Vec<_>>(),
        "bidirected": g
            .bidirected_edges()
            .map(|(a, b)| vec![a.as_str(), b.as_str()])
            .collect::<Vec<_>>(),
    })
}

/// Serializes a graph to its deterministic JSON text.
pub fn graph_to_json_string(g: &MixedGraph) -> String {
    graph_to_json_value(g).to_string()
}
