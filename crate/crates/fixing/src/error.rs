//! Error type for fixing operations.

use graph_core::{GraphError, VertexId, VertexSet};
use kernel_algebra::KernelError;
use thiserror::Error;

fn list(s: &VertexSet) -> String {
    s.iter()
        .map(|v| v.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Everything that can go wrong while fixing vertices or enumerating
/// reachable sets.
#[derive(Debug, Error, PartialEq)]
pub enum FixError {
    /// An underlying graph query failed (unknown vertex, fixed vertex where a
    /// random one is required, invalid construction, ...).
    #[error(transparent)]
    Graph(#[from] GraphError),

    /// An underlying kernel operation failed.
    #[error(transparent)]
    Kernel(#[from] KernelError),

    /// The vertex is random but not fixable; `blocking` lists the other
    /// members of its district that are also its descendants.
    #[error("vertex {v} is not fixable: descendants {} share its district", list(.blocking))]
    NotFixable {
        v: VertexId,
        blocking: VertexSet,
    },

    /// The vertex is random but not s-fixable under the conditioned set;
    /// `blocking` lists the offending descendants (district members and/or
    /// conditioned vertices).
    #[error("vertex {v} is not s-fixable: blocked by descendants {}", list(.blocking))]
    NotSFixable {
        v: VertexId,
        blocking: VertexSet,
    },

    /// A vertex slated for fixing belongs to the conditioned set.
    #[error("vertex {0} is in the conditioned set and cannot be fixed")]
    InSelection(VertexId),

    /// A suffix-constraint member is not among the requested targets.
    #[error("suffix-constraint vertex {0} is not among the fixing targets")]
    SuffixNotTarget(VertexId),

    /// Enumeration was requested on a graph above the configured size limit.
    #[error("enumeration over {n} random vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    /// The kernel handed to a fixing operator violates its precondition.
    #[error("kernel precondition violated: {0}")]
    BadKernel(String),
}
