//! Problem statement types: the query and the input distributions.

use crate::error::IdentError;
use graph_core::{MixedGraph, VertexSet};
use kernel_algebra::{DistRef, KernelExpr};
use serde::{Deserialize, Serialize};
use swig::{display_token, world_labels, Intervention};
use std::fmt;

/// One supplied distribution `p({S}(b) | C(b) = c)`.
///
/// `outcomes` is the outcome margin `S`, `do_` the generating intervention
/// `b`, `given` the conditioning set `C`, and `pinned_level` the recorded
/// values for the subset of `given` only available at one level.  A
/// conditioning variable without a pinned level is available at every
/// level.  `id` is the input's position in the problem statement; formulas
/// and provenance refer to inputs by this index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDist {
    pub outcomes: VertexSet,
    #[serde(rename = "do", default, skip_serializing_if = "Intervention::is_empty")]
    pub do_: Intervention,
    #[serde(default, skip_serializing_if = "VertexSet::is_empty")]
    pub given: VertexSet,
    #[serde(rename = "pinned", default, skip_serializing_if = "Option::is_none")]
    pub pinned_level: Option<Intervention>,
    #[serde(skip)]
    pub id: usize,
}

impl InputDist {
    /// A marginal interventional distribution `p({S}(b))`.
    pub fn marginal(outcomes: VertexSet, do_: Intervention) -> Self {
        InputDist {
            outcomes,
            do_,
            given: VertexSet::new(),
            pinned_level: None,
            id: 0,
        }
    }

    /// A conditional distribution `p({S}(b) | C(b))`, optionally pinned.
    pub fn conditional(
        outcomes: VertexSet,
        do_: Intervention,
        given: VertexSet,
        pinned_level: Option<Intervention>,
    ) -> Self {
        InputDist {
            outcomes,
            do_,
            given,
            pinned_level,
            id: 0,
        }
    }

    /// Same input with the given index.
    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    /// True when the input conditions on nothing.
    pub fn is_unconditional(&self) -> bool {
        self.given.is_empty()
    }

    /// True when `outcomes ∪ keys(do)` covers every random vertex of `g`
    /// and the input conditions on nothing.
    pub fn is_full_joint(&self, g: &MixedGraph) -> bool {
        if !self.is_unconditional() {
            return false;
        }
        let mut covered = self.outcomes.clone();
        covered.extend(self.do_.keys());
        &covered == g.random()
    }

    /// The variables the input's table ranges over: `outcomes ∪ C`, minus
    /// pinned variables (a pinned variable is a recorded slice, not a
    /// table dimension).
    pub fn table_vars(&self) -> VertexSet {
        let pinned = self
            .pinned_level
            .as_ref()
            .map(|p| p.keys())
            .unwrap_or_default();
        self.outcomes
            .union(&self.given)
            .filter(|v| !pinned.contains(*v))
            .cloned()
            .collect()
    }

    /// The base kernel expression referring to this input, with world
    /// labels read off `g`.
    pub fn base_expr(&self, g: &MixedGraph) -> Result<KernelExpr, IdentError> {
        let all_labels = world_labels(g, &self.do_)?;
        let shown: VertexSet = self.outcomes.union(&self.given).cloned().collect();
        let labels = all_labels
            .into_iter()
            .filter(|(v, _)| shown.contains(v))
            .collect();
        let dist = DistRef::new(
            self.id,
            self.outcomes.clone(),
            self.do_.clone(),
            self.given.clone(),
            self.pinned_level.clone(),
            labels,
        )?;
        Ok(KernelExpr::base(dist))
    }

    /// Structural checks against the graph: every named vertex exists and
    /// is random, the roles are disjoint, pinned variables are conditioned
    /// on, and the outcome set is nonempty.
    pub fn validate(&self, g: &MixedGraph) -> Result<(), IdentError> {
        if self.outcomes.is_empty() {
            return Err(IdentError::EmptyInput { input: self.id });
        }
        let do_keys = self.do_.keys();
        for v in self.outcomes.iter().chain(&self.given).chain(&do_keys) {
            if !g.is_random(v) {
                return Err(IdentError::UnknownVertex(v.clone()));
            }
        }
        for v in self.outcomes.intersection(&self.given) {
            return Err(IdentError::InputOverlap {
                input: self.id,
                v: v.clone(),
            });
        }
        for v in self.outcomes.union(&self.given) {
            if do_keys.contains(v) {
                return Err(IdentError::InputOverlap {
                    input: self.id,
                    v: v.clone(),
                });
            }
        }
        if let Some(pinned) = &self.pinned_level {
            for v in pinned.keys().iter() {
                if !self.given.contains(v) {
                    return Err(IdentError::PinnedOutsideGiven {
                        input: self.id,
                        v: v.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// True when the input's generating intervention agrees with `a` on
    /// every shared target.
    pub fn consistent_with(&self, a: &Intervention) -> bool {
        self.do_.is_consistent_with(a)
    }
}

impl fmt::Display for InputDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |s: &VertexSet| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
        let world = if self.do_.is_empty() {
            String::new()
        } else {
            format!(
                "({})",
                self.do_
                    .iter()
                    .map(|(_, t)| display_token(t))
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        };
        write!(f, "p({{{}}}{}", names(&self.outcomes), world)?;
        if !self.given.is_empty() {
            let pinned = self.pinned_level.clone().unwrap_or_default();
            let parts: Vec<String> = self
                .given
                .iter()
                .map(|v| match pinned.get(v) {
                    Some(t) => format!("{v}{world} = {}", display_token(t)),
                    None => format!("{v}{world}"),
                })
                .collect();
            write!(f, " | {}", parts.join(", "))?;
        }
        write!(f, ")")
    }
}

/// The counterfactual query `p(Y(a))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    pub y: VertexSet,
    #[serde(rename = "do", default, skip_serializing_if = "Intervention::is_empty")]
    pub a: Intervention,
}

impl Query {
    pub fn new(y: VertexSet, a: Intervention) -> Self {
        Query { y, a }
    }

    /// Structural checks against the graph.
    pub fn validate(&self, g: &MixedGraph) -> Result<(), IdentError> {
        if self.y.is_empty() {
            return Err(IdentError::EmptyQuery);
        }
        let keys = self.a.keys();
        for v in self.y.iter().chain(&keys) {
            if !g.is_random(v) {
                return Err(IdentError::UnknownVertex(v.clone()));
            }
        }
        if let Some(v) = self.y.intersection(&keys).next() {
            return Err(IdentError::OutcomeIntervened(v.clone()));
        }
        Ok(())
    }
}

/// Assigns each input its position as `id` and validates it against the
/// graph.
pub fn number_inputs(g: &MixedGraph, z: &[InputDist]) -> Result<Vec<InputDist>, IdentError> {
    let numbered: Vec<InputDist> = z
        .iter()
        .enumerate()
        .map(|(i, d)| d.clone().with_id(i))
        .collect();
    for d in &numbered {
        d.validate(g)?;
    }
    Ok(numbered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::{examples, vset, VertexId};

    #[test]
    fn serde_round_trip_matches_json_shape() {
        let json = r#"{"outcomes":["W","Y"],"do":{"X2":"x2"}}"#;
        let d: InputDist = serde_json::from_str(json).unwrap();
        assert_eq!(d.outcomes, vset(["W", "Y"]));
        assert_eq!(d.do_, Intervention::symbolic([("X2", "x2")]));
        assert!(d.given.is_empty());
        assert!(d.pinned_level.is_none());
        let back = serde_json::to_string(&d).unwrap();
        let again: InputDist = serde_json::from_str(&back).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn serde_reads_conditional_with_pinned() {
        let json = r#"{"outcomes":["W1"],"do":{"X1":"x1"},"given":["C"],"pinned":{"C":"c"}}"#;
        let d: InputDist = serde_json::from_str(json).unwrap();
        assert_eq!(d.given, vset(["C"]));
        assert_eq!(
            d.pinned_level,
            Some(Intervention::symbolic([("C", "c")]))
        );
        assert_eq!(d.table_vars(), vset(["W1"]));
    }

    #[test]
    fn query_serde_uses_do_key() {
        let json = r#"{"y":["Y"],"do":{"X1":"x1","X2":"x2"}}"#;
        let q: Query = serde_json::from_str(json).unwrap();
        assert_eq!(q.y, vset(["Y"]));
        assert_eq!(q.a.keys(), vset(["X1", "X2"]));
    }

    #[test]
    fn validation_rejects_overlap_and_unknown() {
        let g = examples::surrogate_pair();
        let bad = InputDist::marginal(vset(["W", "Z9"]), Intervention::empty()).with_id(0);
        assert_eq!(bad.validate(&g), Err(IdentError::UnknownVertex("Z9".into())));

        let overlap = InputDist::conditional(
            vset(["W"]),
            Intervention::empty(),
            vset(["W"]),
            None,
        )
        .with_id(3);
        assert_eq!(
            overlap.validate(&g),
            Err(IdentError::InputOverlap {
                input: 3,
                v: "W".into()
            })
        );

        let do_overlap =
            InputDist::marginal(vset(["W"]), Intervention::symbolic([("W", "w")])).with_id(1);
        assert_eq!(
            do_overlap.validate(&g),
            Err(IdentError::InputOverlap {
                input: 1,
                v: "W".into()
            })
        );

        let bad_pin = InputDist::conditional(
            vset(["Y"]),
            Intervention::empty(),
            vset(["W"]),
            Some(Intervention::symbolic([("U", "u")])),
        )
        .with_id(2);
        assert_eq!(
            bad_pin.validate(&g),
            Err(IdentError::PinnedOutsideGiven {
                input: 2,
                v: "U".into()
            })
        );
    }

    #[test]
    fn full_joint_detection() {
        let g = examples::surrogate_pair();
        let full = InputDist::marginal(
            vset(["U", "W", "X1", "Y"]),
            Intervention::symbolic([("X2", "x2")]),
        );
        assert!(full.is_full_joint(&g));
        let margin = InputDist::marginal(vset(["W", "Y"]), Intervention::symbolic([("X2", "x2")]));
        assert!(!margin.is_full_joint(&g));
    }

    #[test]
    fn display_shows_world_and_pinned_values() {
        let d = InputDist::conditional(
            vset(["W1"]),
            Intervention::symbolic([("X1", "x1")]),
            vset(["C"]),
            Some(Intervention::symbolic([("C", "c")])),
        );
        assert_eq!(d.to_string(), "p({W1}(x_1) | C(x_1) = c)");
        let m = InputDist::marginal(vset(["W", "Y"]), Intervention::symbolic([("X2", "x2")]));
        assert_eq!(m.to_string(), "p({W, Y}(x_2))");
    }

    #[test]
    fn base_expr_carries_ancestral_labels() {
        let g = examples::surrogate_pair();
        let d = InputDist::marginal(vset(["W", "Y"]), Intervention::symbolic([("X2", "x2")]))
            .with_id(1);
        let e = d.base_expr(&g).unwrap();
        match &e {
            KernelExpr::Base { dist: r } => {
                // Y is downstream of x2; W is not.
                assert!(r.labels.contains_key(&VertexId::from("Y")));
                assert!(!r.labels.contains_key(&VertexId::from("W")));
            }
            other => panic!("expected base, got {other:?}"),
        }
    }
}
