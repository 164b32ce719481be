use graph_core::{GraphError, VertexId};
use kernel_algebra::KernelError;
use thiserror::Error;

/// Errors produced while building latent DAGs, sampling parameterizations, or
/// computing ground-truth distributions.
#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Kernel(#[from] KernelError),

    /// The input graph has a fixed vertex; ground truth is defined for
    /// fully random graphs only.
    #[error("vertex '{0}' is fixed; the oracle requires a graph with no fixed vertices")]
    NotAdmg(VertexId),

    /// A cardinality outside the supported range was requested.
    #[error("vertex '{v}' has cardinality {card}; supported range is {min}..={max}")]
    BadCardinality {
        v: VertexId,
        card: usize,
        min: usize,
        max: usize,
    },

    /// A value token referenced a level outside a vertex's cardinality.
    #[error("level {level} is out of range for vertex '{v}' with cardinality {card}")]
    LevelOutOfRange {
        v: VertexId,
        level: usize,
        card: usize,
    },

    /// Ground truth cannot pin a conditioning variable to a symbolic value;
    /// symbolic pins must be resolved to concrete levels first.
    #[error("conditioning variable '{0}' is pinned to a symbolic value; ground truth needs a concrete level")]
    SymbolicPin(VertexId),

    /// A requested conditional distribution divides by an event of
    /// probability zero.
    #[error("conditioning event has probability zero at {slice}")]
    Positivity { slice: String },

    /// A malformed target specification or parameter table.
    #[error("{0}")]
    BadSpec(String),
}
