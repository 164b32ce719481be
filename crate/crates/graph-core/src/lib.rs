//! Conditional acyclic directed mixed graphs (CADMGs) and the genealogical,
//! partition, and separation queries defined on them.
//!
//! A CADMG `G(V, W)` has *random* vertices `V`, *fixed* (context) vertices
//! `W`, directed edges, and bidirected edges, with no directed cycle and no
//! edge carrying an arrowhead into a fixed vertex.  An ADMG is the special
//! case `W = ∅`.
//!
//! All types are immutable values: every operation returns a new graph, so
//! memoization and concurrent use need no coordination.  All iteration
//! orders and tie-breaks are lexicographic on vertex labels, making every
//! derived object deterministic.

pub mod error;
pub mod examples;
pub mod graph;
pub mod json;
pub mod separation;
pub mod vertex;

pub use error::GraphError;
pub use graph::{MixedGraph, RelativeKind};
pub use json::{graph_from_json_str, graph_to_json_string, graph_to_json_value};
pub use separation::m_separated;
pub use vertex::{vset, VertexId, VertexSet};
