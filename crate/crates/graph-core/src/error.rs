//! Error type for graph construction, validation, and queries.

use crate::vertex::VertexId;
use thiserror::Error;

/// Everything that can go wrong while building or querying a graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    /// A vertex label was empty.
    #[error("vertex labels must be non-empty")]
    EmptyLabel,

    /// A label failed the loader's identifier syntax check.
    #[error("invalid vertex label {0:?}: expected [A-Za-z_][A-Za-z0-9_]*")]
    InvalidLabel(String),

    /// The same label appeared twice in one status list.
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),

    /// A label was listed as both random and fixed.
    #[error("vertex {0} is listed as both random and fixed")]
    RandomFixedOverlap(VertexId),

    /// An edge endpoint is not a vertex of the graph.
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    /// A directed or bidirected self-loop.
    #[error("self-loop at {0}")]
    SelfLoop(VertexId),

    /// The same edge appeared twice.
    #[error("duplicate edge {kind} between {a} and {b}")]
    DuplicateEdge {
        /// `"directed"` or `"bidirected"`.
        kind: &'static str,
        /// Tail (directed) or smaller endpoint (bidirected).
        a: VertexId,
        /// Head (directed) or larger endpoint (bidirected).
        b: VertexId,
    },

    /// An edge carries an arrowhead into a fixed vertex.
    #[error("edge with an arrowhead into fixed vertex {0}")]
    ArrowheadIntoFixed(VertexId),

    /// The directed part has a cycle.
    #[error("directed part has a cycle through {0}")]
    Cycle(VertexId),

    /// An operation was applied to a fixed vertex where a random one is
    /// required.
    #[error("vertex {0} is fixed; a random vertex is required")]
    NotRandom(VertexId),

    /// Separation query sets overlap.
    #[error("m-separation sets must be pairwise disjoint; {0} appears twice")]
    SeparationOverlap(VertexId),

    /// Separation query endpoint set is empty.
    #[error("m-separation endpoint sets must be non-empty")]
    EmptyEndpointSet,

    /// JSON input failed to parse.
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        /// 1-based line of the syntax error.
        line: usize,
        /// 1-based column of the syntax error.
        column: usize,
        /// Parser message.
        message: String,
    },
}
