use graph_core::VertexId;
use thiserror::Error;

/// Errors raised while building, transforming, or evaluating kernel expressions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    /// A constructor was handed sets that violate its scope discipline,
    /// e.g. marginalizing a variable that is not an outcome of the child.
    #[error("scope violation: {0}")]
    Scope(String),

    /// Two factors of a product claim the same outcome variable.
    #[error("product factors overlap on outcome variable {0}")]
    ProductOverlap(VertexId),

    /// Evaluation referenced an input id with no registered table.
    #[error("no table registered for input {0}")]
    MissingInput(usize),

    /// A table column appears with two different cardinalities.
    #[error("conflicting cardinality for {vertex}: {left} vs {right}")]
    CardinalityMismatch {
        vertex: VertexId,
        left: usize,
        right: usize,
    },

    /// Division hit a zero denominator under nonzero numerator mass.
    #[error("positivity violation at slice {{{slice}}}: nonzero numerator over zero denominator")]
    Positivity { slice: String },

    /// A table was built from inconsistent pieces.
    #[error("malformed table: {0}")]
    Table(String),

    /// Expression JSON could not be parsed.
    #[error("invalid expression JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}
