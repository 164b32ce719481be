//! Exact ground-truth distributions by brute-force enumeration.
//!
//! A [`TargetSpec`] names a (possibly interventional, possibly conditional)
//! distribution over observed vertices; [`ground_truth`] computes its exact
//! table by multiplying out every conditional table of the latent DAG,
//! materializing interventions as factor substitutions, and summing out
//! everything else.

use graph_core::{GraphError, VertexSet};
use kernel_algebra::TabularDist;
use swig::{Intervention, ValueToken};

use crate::error::OracleError;
use crate::factor::{ones, point_mass};
use crate::latent::LatentDag;
use crate::param::Parameterization;

/// A distribution to compute: `p(outcomes(do) | given(do), pinned)`.
///
/// * `do_`: intervened vertices.  A concrete token integrates the
///   intervention away; a symbolic token keeps the vertex as a free column
///   of the result, indexing one world per level.
/// * `given`: conditioning vertices kept as columns of the result.
/// * `pinned`: conditioning vertices sliced to a concrete level and removed
///   from the result's columns.  Keys must be conditioning vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpec {
    outcomes: VertexSet,
    do_: Intervention,
    given: VertexSet,
    pinned: Intervention,
}

impl TargetSpec {
    /// Build and validate a specification.  Outcomes must be nonempty;
    /// outcomes, intervened vertices, and conditioning vertices must be
    /// pairwise disjoint; pinned keys must be conditioning vertices.
    pub fn new(
        outcomes: VertexSet,
        do_: Intervention,
        given: VertexSet,
        pinned: Intervention,
    ) -> Result<Self, OracleError> {
        if outcomes.is_empty() {
            return Err(OracleError::BadSpec(
                "target has no outcome vertices".into(),
            ));
        }
        let do_keys = do_.keys();
        for v in outcomes.intersection(&do_keys) {
            return Err(OracleError::BadSpec(format!(
                "vertex '{v}' is both an outcome and intervened"
            )));
        }
        for v in outcomes.intersection(&given) {
            return Err(OracleError::BadSpec(format!(
                "vertex '{v}' is both an outcome and a conditioning vertex"
            )));
        }
        for v in given.intersection(&do_keys) {
            return Err(OracleError::BadSpec(format!(
                "vertex '{v}' is both a conditioning vertex and intervened"
            )));
        }
        for v in pinned.keys().difference(&given) {
            return Err(OracleError::BadSpec(format!(
                "pinned vertex '{v}' is not a conditioning vertex"
            )));
        }
        Ok(TargetSpec {
            outcomes,
            do_,
            given,
            pinned,
        })
    }

    /// The observational joint over `outcomes`.
    pub fn joint(outcomes: VertexSet) -> Result<Self, OracleError> {
        Self::new(outcomes, Intervention::empty(), VertexSet::new(), Intervention::empty())
    }

    /// The interventional marginal `p(outcomes(do))`.
    pub fn interventional(outcomes: VertexSet, do_: Intervention) -> Result<Self, OracleError> {
        Self::new(outcomes, do_, VertexSet::new(), Intervention::empty())
    }

    pub fn outcomes(&self) -> &VertexSet {
        &self.outcomes
    }

    pub fn do_(&self) -> &Intervention {
        &self.do_
    }

    pub fn given(&self) -> &VertexSet {
        &self.given
    }

    pub fn pinned(&self) -> &Intervention {
        &self.pinned
    }

    /// All observed vertices the spec mentions.
    pub fn mentioned(&self) -> VertexSet {
        let mut s = self.outcomes.clone();
        s.extend(self.do_.keys());
        s.extend(self.given.iter().cloned());
        s
    }
}

/// Compute the exact table for `spec` under the model `(dag, p)`.
///
/// Result columns: outcomes, conditioning vertices that are not pinned, and
/// symbolically intervened vertices (one world per level).  Concrete
/// interventions and pinned vertices contribute no column.
pub fn ground_truth(
    dag: &LatentDag,
    p: &Parameterization,
    spec: &TargetSpec,
) -> Result<TabularDist, OracleError> {
    for v in spec.mentioned() {
        if !dag.observed().contains(&v) {
            return Err(OracleError::Graph(GraphError::UnknownVertex(v)));
        }
    }
    // Levels used by concrete tokens must exist.
    for (v, t) in spec.do_.iter().chain(spec.pinned.iter()) {
        if let ValueToken::Concrete(k) = t {
            let card = dag.card(v)?;
            if *k >= card {
                return Err(OracleError::LevelOutOfRange {
                    v: v.clone(),
                    level: *k,
                    card,
                });
            }
        }
    }

    // Multiply out the factorization, substituting intervention factors.
    let mut joint = TabularDist::scalar(1.0);
    for v in dag.topological_order() {
        let factor = match spec.do_.get(&v) {
            Some(ValueToken::Concrete(k)) => point_mass(&v, dag.card(&v)?, *k)?,
            Some(ValueToken::Symbolic(_)) => ones(&v, dag.card(&v)?)?,
            None => p.table(&v)?.clone(),
        };
        joint = TabularDist::multiply(&joint, &factor)?;
    }

    // Keep outcome columns, conditioning columns, and symbolic worlds.
    let mut keep = spec.outcomes.union(&spec.given).cloned().collect::<VertexSet>();
    for (v, t) in spec.do_.iter() {
        if matches!(t, ValueToken::Symbolic(_)) {
            keep.insert(v.clone());
        }
    }
    let drop: VertexSet = joint
        .column_set()
        .difference(&keep)
        .cloned()
        .collect();
    let mut table = joint.marginalize_out(&drop)?;

    if !spec.given.is_empty() {
        let den = table.marginalize_out(&spec.outcomes)?;
        if let Some(slice) = zero_slice(&den) {
            return Err(OracleError::Positivity { slice });
        }
        let (quotient, _) = TabularDist::divide(&table, &den)?;
        table = quotient;
    }

    for (v, t) in spec.pinned.iter() {
        match t {
            ValueToken::Concrete(k) => table = table.slice(v, *k)?,
            ValueToken::Symbolic(_) => return Err(OracleError::SymbolicPin(v.clone())),
        }
    }

    Ok(table)
}

/// The observational joint over all observed vertices — the table backing
/// the input `p(V)`.
pub fn observational_joint(
    dag: &LatentDag,
    p: &Parameterization,
) -> Result<TabularDist, OracleError> {
    let spec = TargetSpec::joint(dag.observed().clone())?;
    ground_truth(dag, p, &spec)
}

/// First zero entry of `t`, described as a named slice.
fn zero_slice(t: &TabularDist) -> Option<String> {
    for (assign, value) in t.iter_assignments() {
        if value <= 0.0 {
            let parts: Vec<String> = t
                .vars()
                .iter()
                .zip(&assign)
                .map(|((v, _), k)| format!("{v}={k}"))
                .collect();
            return Some(if parts.is_empty() {
                "the empty context".to_string()
            } else {
                parts.join(", ")
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::{vset, MixedGraph, VertexId};
    use std::collections::BTreeMap;

    use crate::latent::canonical_latent_dag;

    fn vid(s: &str) -> VertexId {
        VertexId::new(s)
    }

    /// A -> B, no confounding, with hand-written tables.
    fn hand_chain() -> (LatentDag, Parameterization) {
        let g = MixedGraph::new(
            vset(["A", "B"]),
            VertexSet::new(),
            vec![(vid("A"), vid("B"))],
            vec![],
        )
        .unwrap();
        let dag = canonical_latent_dag(&g, &BTreeMap::new()).unwrap();
        let mut tables = BTreeMap::new();
        tables.insert(
            vid("A"),
            TabularDist::new(vec![(vid("A"), 2)], vec![0.25, 0.75]).unwrap(),
        );
        tables.insert(
            vid("B"),
            TabularDist::new(
                vec![(vid("A"), 2), (vid("B"), 2)],
                vec![0.5, 0.5, 0.1, 0.9],
            )
            .unwrap(),
        );
        let p = Parameterization::from_tables(&dag, tables).unwrap();
        (dag, p)
    }

    /// A -> B with A <-> B, randomly parameterized.
    fn confounded_pair(seed: u64) -> (LatentDag, Parameterization) {
        let g = MixedGraph::new(
            vset(["A", "B"]),
            VertexSet::new(),
            vec![(vid("A"), vid("B"))],
            vec![(vid("A"), vid("B"))],
        )
        .unwrap();
        let dag = canonical_latent_dag(&g, &BTreeMap::new()).unwrap();
        let p = Parameterization::sample(&dag, seed);
        (dag, p)
    }

    #[test]
    fn joint_matches_hand_product() {
        let (dag, p) = hand_chain();
        let joint = observational_joint(&dag, &p).unwrap();
        let want = [
            (vec![0, 0], 0.25 * 0.5),
            (vec![0, 1], 0.25 * 0.5),
            (vec![1, 0], 0.75 * 0.1),
            (vec![1, 1], 0.75 * 0.9),
        ];
        let reordered = joint.reordered(&[vid("A"), vid("B")]).unwrap();
        for (assign, value) in want {
            assert!((reordered.at(&assign) - value).abs() < 1e-15);
        }
        assert!((joint.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_divides_by_marginal() {
        let (dag, p) = hand_chain();
        let spec = TargetSpec::new(
            vset(["A"]),
            Intervention::empty(),
            vset(["B"]),
            Intervention::empty(),
        )
        .unwrap();
        let cond = ground_truth(&dag, &p, &spec).unwrap();
        // p(B=1) = 0.25*0.5 + 0.75*0.9 = 0.8; p(A=1 | B=1) = 0.675/0.8
        let t = cond.reordered(&[vid("A"), vid("B")]).unwrap();
        assert!((t.at(&[1, 1]) - 0.675 / 0.8).abs() < 1e-12);
        assert!((t.at(&[0, 1]) - 0.125 / 0.8).abs() < 1e-12);
        let dev = cond.max_normalization_deviation(&vset(["A"])).unwrap();
        assert!(dev <= 1e-12);
    }

    #[test]
    fn concrete_do_on_a_chain_matches_the_cpt_row() {
        let (dag, p) = hand_chain();
        let spec = TargetSpec::interventional(
            vset(["B"]),
            Intervention::from_pairs([("A", ValueToken::Concrete(1))]),
        )
        .unwrap();
        let t = ground_truth(&dag, &p, &spec).unwrap();
        assert_eq!(t.column_set(), vset(["B"]));
        assert!((t.at(&[0]) - 0.1).abs() < 1e-15);
        assert!((t.at(&[1]) - 0.9).abs() < 1e-15);
    }

    #[test]
    fn symbolic_do_slices_match_concrete_do() {
        let (dag, p) = confounded_pair(11);
        let sym = TargetSpec::interventional(
            vset(["B"]),
            Intervention::symbolic([("A", "a")]),
        )
        .unwrap();
        let world = ground_truth(&dag, &p, &sym).unwrap();
        assert_eq!(world.column_set(), vset(["A", "B"]));
        // normalizes over B within each world
        assert!(world.max_normalization_deviation(&vset(["B"])).unwrap() <= 1e-12);
        for k in 0..2 {
            let conc = TargetSpec::interventional(
                vset(["B"]),
                Intervention::from_pairs([("A", ValueToken::Concrete(k))]),
            )
            .unwrap();
            let want = ground_truth(&dag, &p, &conc).unwrap();
            let got = world.slice(&vid("A"), k).unwrap();
            let dev = TabularDist::max_broadcast_deviation(&got, &want).unwrap();
            assert!(dev <= 1e-15);
        }
    }

    #[test]
    fn confounding_separates_do_from_conditioning() {
        let (dag, p) = confounded_pair(5);
        let do_spec = TargetSpec::interventional(
            vset(["B"]),
            Intervention::from_pairs([("A", ValueToken::Concrete(0))]),
        )
        .unwrap();
        let do_table = ground_truth(&dag, &p, &do_spec).unwrap();
        let cond_spec = TargetSpec::new(
            vset(["B"]),
            Intervention::empty(),
            vset(["A"]),
            Intervention::from_pairs([("A", ValueToken::Concrete(0))]),
        )
        .unwrap();
        let cond_table = ground_truth(&dag, &p, &cond_spec).unwrap();
        let dev = TabularDist::max_broadcast_deviation(&do_table, &cond_table).unwrap();
        assert!(
            dev > 1e-4,
            "confounded model should separate p(B|do(A)) from p(B|A), dev={dev}"
        );
    }

    #[test]
    fn pinned_equals_slice_of_conditional() {
        let (dag, p) = hand_chain();
        let full = ground_truth(
            &dag,
            &p,
            &TargetSpec::new(
                vset(["A"]),
                Intervention::empty(),
                vset(["B"]),
                Intervention::empty(),
            )
            .unwrap(),
        )
        .unwrap();
        let pinned = ground_truth(
            &dag,
            &p,
            &TargetSpec::new(
                vset(["A"]),
                Intervention::empty(),
                vset(["B"]),
                Intervention::from_pairs([("B", ValueToken::Concrete(1))]),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(pinned.column_set(), vset(["A"]));
        let want = full.slice(&vid("B"), 1).unwrap();
        assert!(TabularDist::max_broadcast_deviation(&pinned, &want).unwrap() <= 1e-15);
    }

    #[test]
    fn symbolic_pin_is_rejected() {
        let (dag, p) = hand_chain();
        let spec = TargetSpec::new(
            vset(["A"]),
            Intervention::empty(),
            vset(["B"]),
            Intervention::symbolic([("B", "b")]),
        )
        .unwrap();
        assert_eq!(
            ground_truth(&dag, &p, &spec).unwrap_err(),
            OracleError::SymbolicPin(vid("B"))
        );
    }

    #[test]
    fn zero_probability_conditioning_event_errors() {
        let g = MixedGraph::new(
            vset(["A", "B"]),
            VertexSet::new(),
            vec![(vid("A"), vid("B"))],
            vec![],
        )
        .unwrap();
        let dag = canonical_latent_dag(&g, &BTreeMap::new()).unwrap();
        let mut tables = BTreeMap::new();
        tables.insert(
            vid("A"),
            TabularDist::new(vec![(vid("A"), 2)], vec![1.0, 0.0]).unwrap(),
        );
        tables.insert(
            vid("B"),
            TabularDist::new(
                vec![(vid("A"), 2), (vid("B"), 2)],
                vec![1.0, 0.0, 0.5, 0.5],
            )
            .unwrap(),
        );
        let p = Parameterization::from_tables(&dag, tables).unwrap();
        let spec = TargetSpec::new(
            vset(["A"]),
            Intervention::empty(),
            vset(["B"]),
            Intervention::empty(),
        )
        .unwrap();
        let err = ground_truth(&dag, &p, &spec).unwrap_err();
        assert_eq!(
            err,
            OracleError::Positivity {
                slice: "B=1".to_string()
            }
        );
    }

    #[test]
    fn spec_validation_rejects_overlaps() {
        assert!(TargetSpec::joint(VertexSet::new()).is_err());
        assert!(TargetSpec::new(
            vset(["A"]),
            Intervention::symbolic([("A", "a")]),
            VertexSet::new(),
            Intervention::empty(),
        )
        .is_err());
        assert!(TargetSpec::new(
            vset(["A"]),
            Intervention::empty(),
            vset(["A"]),
            Intervention::empty(),
        )
        .is_err());
        assert!(TargetSpec::new(
            vset(["A"]),
            Intervention::symbolic([("B", "b")]),
            vset(["B"]),
            Intervention::empty(),
        )
        .is_err());
        // pin of a non-conditioning vertex
        assert!(TargetSpec::new(
            vset(["A"]),
            Intervention::empty(),
            vset(["B"]),
            Intervention::from_pairs([("C", ValueToken::Concrete(0))]),
        )
        .is_err());
    }

    #[test]
    fn unknown_vertices_and_levels_error() {
        let (dag, p) = hand_chain();
        let spec = TargetSpec::joint(vset(["Q"])).unwrap();
        assert!(matches!(
            ground_truth(&dag, &p, &spec),
            Err(OracleError::Graph(GraphError::UnknownVertex(_)))
        ));
        let spec = TargetSpec::interventional(
            vset(["B"]),
            Intervention::from_pairs([("A", ValueToken::Concrete(2))]),
        )
        .unwrap();
        assert!(matches!(
            ground_truth(&dag, &p, &spec),
            Err(OracleError::LevelOutOfRange { level: 2, .. })
        ));
    }
}
