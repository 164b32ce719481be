//! Error type for SWIG construction and projection.

use graph_core::{GraphError, VertexId};
use thiserror::Error;

/// Everything that can go wrong while splitting or projecting.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SwigError {
    /// Splitting requires a graph with no fixed vertices.
    #[error("splitting requires an unconditional graph; {0} is already fixed")]
    AlreadyConditional(VertexId),

    /// An intervention key is not a random vertex of the graph.
    #[error("intervention target {0} is not a random vertex of the graph")]
    BadTarget(VertexId),

    /// The label generated for a fixed half collides with an existing vertex.
    #[error("fixed-half label {0} collides with an existing vertex")]
    LabelCollision(VertexId),

    /// `keep` contained a vertex that is not random (fixed vertices are
    /// always kept and cannot be projected out).
    #[error("cannot project on {0}: only random vertices can be kept or dropped")]
    ProjectNotRandom(VertexId),

    /// An outcome set intersects the intervention it is queried under.
    #[error("outcome {0} is also an intervention target")]
    OutcomeIntervened(VertexId),

    /// Underlying graph violation.
    #[error(transparent)]
    Graph(#[from] GraphError),
}
