//! Intervention value tokens and assignments.

use graph_core::{VertexId, VertexSet};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The value assigned to an intervened vertex: either a *symbolic* level
/// label (an unknown-but-fixed value such as `x1`) or a *concrete* level
/// index into the vertex's finite domain.
///
/// Symbolic tokens compare by label, concrete tokens by index; a symbolic
/// token never equals a concrete one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueToken {
    /// A named symbolic level, e.g. `"x1"`.
    Symbolic(String),
    /// A concrete level index, `0`-based.
    Concrete(usize),
}

impl ValueToken {
    /// Convenience constructor for a symbolic token.
    pub fn symbolic(label: impl Into<String>) -> Self {
        ValueToken::Symbolic(label.into())
    }
}

impl fmt::Display for ValueToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueToken::Symbolic(s) => f.write_str(s),
            ValueToken::Concrete(k) => write!(f, "{k}"),
        }
    }
}

/// Renders a token for formulas: symbolic labels get the usual subscript
/// underscore inserted between a trailing letter and trailing digits
/// (`x2` → `x_2`), concrete levels print as their index.
pub fn display_token(t: &ValueToken) -> String {
    match t {
        ValueToken::Concrete(k) => k.to_string(),
        ValueToken::Symbolic(s) => {
            let digits = s.chars().rev().take_while(|c| c.is_ascii_digit()).count();
            if digits == 0 || digits == s.len() || s.contains('_') {
                s.clone()
            } else {
                let split = s.len() - digits;
                format!("{}_{}", &s[..split], &s[split..])
            }
        }
    }
}

impl Serialize for ValueToken {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ValueToken::Symbolic(s) => serializer.serialize_str(s),
            ValueToken::Concrete(k) => serializer.serialize_u64(*k as u64),
        }
    }
}

impl<'de> Deserialize<'de> for ValueToken {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> de::Visitor<'de> for V {
            type Value = ValueToken;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a symbolic level label (string) or concrete level index (integer)")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ValueToken, E> {
                Ok(ValueToken::Symbolic(v.to_owned()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ValueToken, E> {
                Ok(ValueToken::Concrete(v as usize))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ValueToken, E> {
                if v < 0 {
                    return Err(E::custom("level indices must be ≥ 0"));
                }
                Ok(ValueToken::Concrete(v as usize))
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// An assignment of value tokens to distinct vertices — the `a` in `p(Y(a))`
/// or the regime `b_i` of an input distribution.
///
/// Two interventions are *consistent* when they agree on every shared key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Intervention(BTreeMap<VertexId, ValueToken>);

impl Intervention {
    /// The empty assignment.
    pub fn empty() -> Self {
        Intervention(BTreeMap::new())
    }

    /// Builds an assignment from `(vertex, token)` pairs; later duplicates
    /// overwrite earlier ones.
    pub fn from_pairs<I, K>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (K, ValueToken)>,
        K: Into<VertexId>,
    {
        Intervention(pairs.into_iter().map(|(k, t)| (k.into(), t)).collect())
    }

    /// Shorthand for an all-symbolic assignment: `[("X1","x1")]`.
    pub fn symbolic<I, K, L>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (K, L)>,
        K: Into<VertexId>,
        L: Into<String>,
    {
        Intervention(
            pairs
                .into_iter()
                .map(|(k, l)| (k.into(), ValueToken::Symbolic(l.into())))
                .collect(),
        )
    }

    /// The token assigned to `v`, if any.
    pub fn get(&self, v: &VertexId) -> Option<&ValueToken> {
        self.0.get(v)
    }

    /// Whether `v` is assigned.
    pub fn contains_key(&self, v: &VertexId) -> bool {
        self.0.contains_key(v)
    }

    /// The assigned vertices.
    pub fn keys(&self) -> VertexSet {
        self.0.keys().cloned().collect()
    }

    /// Iterates over `(vertex, token)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &ValueToken)> {
        self.0.iter()
    }

    /// Number of assigned vertices.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether no vertex is assigned.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether `self` and `other` agree on every shared key.
    pub fn is_consistent_with(&self, other: &Intervention) -> bool {
        self.0.iter().all(|(k, t)| other.get(k).map_or(true, |u| u == t))
    }

    /// The sub-assignment on `keys`.
    pub fn restrict(&self, keys: &VertexSet) -> Intervention {
        Intervention(
            self.0
                .iter()
                .filter(|(k, _)| keys.contains(*k))
                .map(|(k, t)| (k.clone(), t.clone()))
                .collect(),
        )
    }

    /// The union of two consistent assignments; `None` if they clash on a
    /// shared key.
    pub fn merge(&self, other: &Intervention) -> Option<Intervention> {
        if !self.is_consistent_with(other) {
            return None;
        }
        let mut out = self.0.clone();
        for (k, t) in &other.0 {
            out.insert(k.clone(), t.clone());
        }
        Some(Intervention(out))
    }

    /// Adds one assignment, returning a new value.
    pub fn with(&self, v: impl Into<VertexId>, t: ValueToken) -> Intervention {
        let mut out = self.0.clone();
        out.insert(v.into(), t);
        Intervention(out)
    }
}

impl<K: Into<VertexId>> FromIterator<(K, ValueToken)> for Intervention {
    fn from_iter<I: IntoIterator<Item = (K, ValueToken)>>(iter: I) -> Self {
        Intervention::from_pairs(iter)
    }
}
