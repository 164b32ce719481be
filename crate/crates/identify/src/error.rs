//! Error type shared by every identification entry point.

use graph_core::{GraphError, VertexId};
use thiserror::Error;

/// Errors raised while validating a problem instance or running an
/// identification algorithm.
///
/// A *well-posed but unidentifiable* query is not an error: the algorithms
/// report that through [`crate::Status::NotIdentified`] or
/// [`crate::Status::Unknown`].  Errors cover malformed queries, inputs that
/// violate an algorithm's preconditions, and resource limits.
#[derive(Debug, Error, PartialEq)]
pub enum IdentError {
    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Swig(#[from] swig::SwigError),

    #[error(transparent)]
    Kernel(#[from] kernel_algebra::KernelError),

    #[error(transparent)]
    Fix(#[from] fixing::FixError),

    /// The query has an empty outcome set.
    #[error("query outcome set is empty")]
    EmptyQuery,

    /// A query outcome is also an intervention target.
    #[error("query outcome {0} is also intervened on")]
    OutcomeIntervened(VertexId),

    /// A vertex named by the query or an input is not in the graph.
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    /// An input's outcome, conditioning, and intervention sets overlap.
    #[error("input {input}: variable {v} appears in more than one role")]
    InputOverlap { input: usize, v: VertexId },

    /// An input pins a variable it does not condition on.
    #[error("input {input}: pinned variable {v} is not in the conditioning set")]
    PinnedOutsideGiven { input: usize, v: VertexId },

    /// An input's outcome set is empty.
    #[error("input {input} has an empty outcome set")]
    EmptyInput { input: usize },

    /// `g_id` requires every input to be a full joint interventional
    /// distribution.
    #[error(
        "input {input} is not a full joint over the non-intervened vertices; \
         use a_id for ancestral margins, m_id for general margins, or e_id \
         for conditionals"
    )]
    NotFullJoint { input: usize },

    /// `g_id`, `a_id`, and `m_id` accept unconditional inputs only.
    #[error("input {input} is conditional; use e_id for conditional inputs")]
    ConditionalInput { input: usize },

    /// `a_id` requires each input's outcome set to be ancestral in its own
    /// world graph.
    #[error(
        "input {input} is not an ancestral margin: {ancestor} is an ancestor \
         of the outcome set in its world graph but is not included"
    )]
    NotAncestral { input: usize, ancestor: VertexId },

    /// The relevant-margin search space is too large to enumerate.
    #[error(
        "search space over {size} relevant vertices exceeds the limit of \
         {limit}; the margin search enumerates subsets exhaustively"
    )]
    SearchSpaceTooLarge { size: usize, limit: usize },

    /// A precondition of the conditional-input lemma fails for a
    /// single-input selection query; the clause names the violation.
    #[error("selection lemma not applicable: {clause}")]
    NotApplicable { clause: String },

    /// The algorithm the caller requested cannot handle the supplied inputs.
    #[error("no inputs were supplied")]
    NoInputs,
}
