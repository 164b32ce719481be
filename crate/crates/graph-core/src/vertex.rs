//! Vertex identity and vertex sets.

use serde::{Deserialize, Serialize};
use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;

/// A vertex label.  Identity is by case-sensitive string label; two vertices
/// in one graph never share a label.
///
/// Construction via [`VertexId::new`] accepts any non-empty string; the JSON
/// loader additionally restricts labels to identifier syntax
/// (`[A-Za-z_][A-Za-z0-9_]*`), which leaves the remaining label space free
/// for internally generated auxiliary vertices that must not collide with
/// user vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    /// Creates a vertex id from a label.
    pub fn new(label: impl Into<String>) -> Self {
        VertexId(label.into())
    }

    /// The label as a string slice.
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Whether the label is a valid user-facing identifier:
    /// `[A-Za-z_][A-Za-z0-9_]*`.
    pub fn is_identifier(&self) -> bool {
        let mut chars = self.0.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId::new(s)
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// A set of vertices, ordered lexicographically by label.
pub type VertexSet = BTreeSet<VertexId>;

/// Convenience constructor for a [`VertexSet`] from anything yielding labels.
///
/// ```
/// use graph_core::vset;
/// let s = vset(["B", "A"]);
/// assert_eq!(s.len(), 2);
/// ```
pub fn vset<I>(labels: I) -> VertexSet
where
    I: IntoIterator,
    I::Item: Into<VertexId>,
{
    labels.into_iter().map(Into::into).collect()
}
