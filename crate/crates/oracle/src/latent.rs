//! Canonical hidden-variable expansion of a mixed graph.
//!
//! Every bidirected edge `A <-> B` is replaced by a fresh hidden root with
//! directed edges into both endpoints.  Hidden vertices are named
//! `#{A}~{B}`; the `#` prefix cannot appear in user-supplied vertex names,
//! so hidden names never collide with observed ones.

use std::collections::BTreeMap;

use graph_core::{GraphError, MixedGraph, VertexId, VertexSet};

use crate::error::OracleError;

/// Prefix reserved for hidden-vertex names.
pub const HIDDEN_PREFIX: char = '#';

/// Cardinality assigned to every hidden confounder.
pub const HIDDEN_CARDINALITY: usize = 3;

/// Smallest supported observed cardinality.
pub const MIN_OBSERVED_CARDINALITY: usize = 2;

/// Largest supported observed cardinality.
pub const MAX_OBSERVED_CARDINALITY: usize = 4;

/// A directed acyclic graph over observed and hidden vertices, together
/// with a cardinality for each vertex.  Produced by [`canonical_latent_dag`].
#[derive(Debug, Clone, PartialEq)]
pub struct LatentDag {
    observed: VertexSet,
    hidden: VertexSet,
    directed: Vec<(VertexId, VertexId)>,
    cards: BTreeMap<VertexId, usize>,
}

impl LatentDag {
    /// The observed vertices (the random vertices of the source graph).
    pub fn observed(&self) -> &VertexSet {
        &self.observed
    }

    /// The hidden vertices introduced for bidirected edges.
    pub fn hidden(&self) -> &VertexSet {
        &self.hidden
    }

    /// All directed edges, over observed and hidden vertices.
    pub fn directed_edges(&self) -> impl Iterator<Item = &(VertexId, VertexId)> {
        self.directed.iter()
    }

    /// Cardinality of every vertex.
    pub fn cards(&self) -> &BTreeMap<VertexId, usize> {
        &self.cards
    }

    /// Cardinality of one vertex.
    pub fn card(&self, v: &VertexId) -> Result<usize, OracleError> {
        self.cards
            .get(v)
            .copied()
            .ok_or_else(|| OracleError::Graph(GraphError::UnknownVertex(v.clone())))
    }

    /// Cardinalities restricted to the observed vertices.
    pub fn observed_cards(&self) -> BTreeMap<VertexId, usize> {
        self.cards
            .iter()
            .filter(|(v, _)| self.observed.contains(*v))
            .map(|(v, c)| (v.clone(), *c))
            .collect()
    }

    /// Parents of `v` in the latent DAG.
    pub fn parents_of(&self, v: &VertexId) -> Result<VertexSet, OracleError> {
        if !self.cards.contains_key(v) {
            return Err(OracleError::Graph(GraphError::UnknownVertex(v.clone())));
        }
        Ok(self
            .directed
            .iter()
            .filter(|(_, c)| c == v)
            .map(|(p, _)| p.clone())
            .collect())
    }

    /// The latent DAG as a mixed graph with every vertex random and no
    /// bidirected edges.  Useful for graph queries and latent projection.
    pub fn as_graph(&self) -> MixedGraph {
        let vertices: VertexSet = self.observed.union(&self.hidden).cloned().collect();
        MixedGraph::new(vertices, VertexSet::new(), self.directed.clone(), Vec::new())
            .expect("latent DAG is a valid mixed graph by construction")
    }

    /// A topological order over all vertices (hidden roots first only when
    /// forced by edges; ties resolve lexicographically).
    pub fn topological_order(&self) -> Vec<VertexId> {
        self.as_graph().topological_order()
    }

    /// Number of cells in the full joint table over all vertices.
    pub fn joint_size(&self) -> usize {
        self.cards.values().product()
    }
}

/// Expand a mixed graph into its canonical hidden-variable DAG.
///
/// `cards` assigns cardinalities to observed vertices; vertices absent from
/// the map default to binary.  Every hidden confounder gets cardinality
/// [`HIDDEN_CARDINALITY`].  Fails if the graph has fixed vertices, if a
/// cardinality falls outside `2..=4`, or if `cards` names an unknown vertex.
pub fn canonical_latent_dag(
    g: &MixedGraph,
    cards: &BTreeMap<VertexId, usize>,
) -> Result<LatentDag, OracleError> {
    if let Some(w) = g.fixed().iter().next() {
        return Err(OracleError::NotAdmg(w.clone()));
    }
    for v in cards.keys() {
        if !g.is_random(v) {
            return Err(OracleError::Graph(GraphError::UnknownVertex(v.clone())));
        }
    }

    let mut all_cards = BTreeMap::new();
    for v in g.random() {
        let c = cards.get(v).copied().unwrap_or(MIN_OBSERVED_CARDINALITY);
        if !(MIN_OBSERVED_CARDINALITY..=MAX_OBSERVED_CARDINALITY).contains(&c) {
            return Err(OracleError::BadCardinality {
                v: v.clone(),
                card: c,
                min: MIN_OBSERVED_CARDINALITY,
                max: MAX_OBSERVED_CARDINALITY,
            });
        }
        all_cards.insert(v.clone(), c);
    }

    let mut hidden = VertexSet::new();
    let mut directed: Vec<(VertexId, VertexId)> = g.directed_edges().cloned().collect();
    for (a, b) in g.bidirected_edges() {
        let h = VertexId::new(format!("{HIDDEN_PREFIX}{a}~{b}"));
        all_cards.insert(h.clone(), HIDDEN_CARDINALITY);
        directed.push((h.clone(), a.clone()));
        directed.push((h.clone(), b.clone()));
        hidden.insert(h);
    }

    Ok(LatentDag {
        observed: g.random().clone(),
        hidden,
        directed,
        cards: all_cards,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::examples;
    use graph_core::vset;

    fn binary(g: &MixedGraph) -> BTreeMap<VertexId, usize> {
        g.random().iter().map(|v| (v.clone(), 2)).collect()
    }

    #[test]
    fn dag_input_introduces_no_hidden_vertices() {
        let g = examples::backdoor();
        assert_eq!(g.bidirected_edges().count(), 0);
        let dag = canonical_latent_dag(&g, &binary(&g)).unwrap();
        assert!(dag.hidden().is_empty());
        assert_eq!(dag.observed(), g.random());
        let got: Vec<_> = dag.directed_edges().cloned().collect();
        let want: Vec<_> = g.directed_edges().cloned().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn one_hidden_root_per_bidirected_edge() {
        let g = MixedGraph::new(
            vset(["X1", "X2"]),
            VertexSet::new(),
            vec![],
            vec![(VertexId::new("X1"), VertexId::new("X2"))],
        )
        .unwrap();
        let dag = canonical_latent_dag(&g, &BTreeMap::new()).unwrap();
        assert_eq!(dag.hidden().len(), 1);
        let h = dag.hidden().iter().next().unwrap().clone();
        assert!(h.as_str().starts_with(HIDDEN_PREFIX));
        assert_eq!(dag.card(&h).unwrap(), HIDDEN_CARDINALITY);
        assert_eq!(dag.parents_of(&VertexId::new("X1")).unwrap(), vset([h.as_str()]));
        assert_eq!(dag.parents_of(&VertexId::new("X2")).unwrap(), vset([h.as_str()]));
        assert_eq!(dag.parents_of(&h).unwrap(), VertexSet::new());
    }

    #[test]
    fn surrogate_pair_gets_four_hidden_vertices() {
        let g = examples::surrogate_pair();
        let dag = canonical_latent_dag(&g, &BTreeMap::new()).unwrap();
        assert_eq!(g.bidirected_edges().count(), 4);
        assert_eq!(dag.hidden().len(), 4);
        // every hidden vertex is a root with exactly two children
        for h in dag.hidden() {
            assert!(dag.parents_of(h).unwrap().is_empty());
            let children = dag
                .directed_edges()
                .filter(|(p, _)| p == h)
                .count();
            assert_eq!(children, 2);
        }
        // defaults: observed binary, hidden ternary
        for v in dag.observed() {
            assert_eq!(dag.card(v).unwrap(), 2);
        }
        assert_eq!(dag.joint_size(), 2usize.pow(5) * 3usize.pow(4));
    }

    #[test]
    fn fixed_vertex_is_rejected() {
        let g = MixedGraph::new(
            vset(["B"]),
            vset(["a"]),
            vec![(VertexId::new("a"), VertexId::new("B"))],
            vec![],
        )
        .unwrap();
        let err = canonical_latent_dag(&g, &BTreeMap::new()).unwrap_err();
        assert_eq!(err, OracleError::NotAdmg(VertexId::new("a")));
    }

    #[test]
    fn cardinality_bounds_are_enforced() {
        let g = examples::backdoor();
        let mut cards = binary(&g);
        cards.insert(VertexId::new("A"), 5);
        let err = canonical_latent_dag(&g, &cards).unwrap_err();
        assert!(matches!(err, OracleError::BadCardinality { card: 5, .. }));

        let mut cards = binary(&g);
        cards.insert(VertexId::new("A"), 1);
        assert!(matches!(
            canonical_latent_dag(&g, &cards),
            Err(OracleError::BadCardinality { card: 1, .. })
        ));

        let mut cards = binary(&g);
        cards.insert(VertexId::new("A"), 4);
        let dag = canonical_latent_dag(&g, &cards).unwrap();
        assert_eq!(dag.card(&VertexId::new("A")).unwrap(), 4);
    }

    #[test]
    fn unknown_cardinality_key_is_rejected() {
        let g = examples::backdoor();
        let mut cards = BTreeMap::new();
        cards.insert(VertexId::new("Zed"), 2);
        let err = canonical_latent_dag(&g, &cards).unwrap_err();
        assert_eq!(
            err,
            OracleError::Graph(GraphError::UnknownVertex(VertexId::new("Zed")))
        );
    }

    #[test]
    fn as_graph_is_a_dag_over_all_vertices() {
        let g = examples::chain4();
        let dag = canonical_latent_dag(&g, &BTreeMap::new()).unwrap();
        let lg = dag.as_graph();
        assert_eq!(lg.fixed().len(), 0);
        assert_eq!(lg.bidirected_edges().count(), 0);
        assert_eq!(
            lg.random().len(),
            dag.observed().len() + dag.hidden().len()
        );
        let order = dag.topological_order();
        assert_eq!(order.len(), lg.random().len());
        // parents precede children
        let pos: BTreeMap<_, _> = order.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        for (p, c) in dag.directed_edges() {
            assert!(pos[p] < pos[c], "{p} should precede {c}");
        }
    }
}
