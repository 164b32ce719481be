//! Enumeration of reachable vertex sets and the intrinsic sets among them.
//!
//! A nonempty set `R` of random vertices is *reachable* when its complement
//! can be fixed by some valid sequence; it is *intrinsic* when the reached
//! graph has exactly one district (necessarily `R` itself).  The search
//! walks the lattice of remainders depth-first, fixing one fixable vertex
//! at a time; because every order reaching the same remainder yields the
//! same graph, visited remainders are memoized and each set keeps the
//! sequence of its first visit as witness.

use std::collections::BTreeMap;

use graph_core::{graph_to_json_string, MixedGraph, VertexSet};
use serde::Serialize;

use crate::error::FixError;
use crate::fix::{fix_graph_unchecked, is_fixable, FixingSequence};

/// Default bound on `|random(g)|` for enumeration; the walk visits up to
/// `2^n` remainders.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

/// One reachable set of random vertices, with its intrinsic flag and the
/// fixing sequence that first reached it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachableSet {
    /// The vertices left random in the reached graph.
    pub vertices: VertexSet,
    /// Whether the reached graph has exactly one district.
    pub intrinsic: bool,
    /// The vertices fixed to reach this set, in order.
    pub sequence: FixingSequence,
}

/// The full catalog of reachable sets of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntrinsicCatalog {
    /// Canonical JSON of the graph the catalog was computed from.
    pub fingerprint: String,
    /// Every reachable set, ordered by size then lexicographically.
    pub sets: Vec<ReachableSet>,
}

impl IntrinsicCatalog {
    /// The reachable sets flagged intrinsic, in catalog order.
    pub fn intrinsic_sets(&self) -> impl Iterator<Item = &ReachableSet> {
        self.sets.iter().filter(|s| s.intrinsic)
    }

    /// Looks up one reachable set by its vertex set.
    pub fn get(&self, vertices: &VertexSet) -> Option<&ReachableSet> {
        self.sets.iter().find(|s| &s.vertices == vertices)
    }
}

/// Enumerates every reachable set of `g` under the default size limit.
pub fn enumerate_reachable(g: &MixedGraph) -> Result<IntrinsicCatalog, FixError> {
    enumerate_reachable_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

/// Enumerates every reachable set of `g`, refusing graphs with more than
/// `limit` random vertices.
pub fn enumerate_reachable_with_limit(
    g: &MixedGraph,
    limit: usize,
) -> Result<IntrinsicCatalog, FixError> {
    let n = g.random().len();
    if n > limit {
        return Err(FixError::TooLarge { n, limit });
    }
    let mut found: BTreeMap<VertexSet, (bool, FixingSequence)> = BTreeMap::new();
    let mut prefix = FixingSequence::new();
    visit(g, &mut prefix, &mut found)?;
    let mut sets: Vec<ReachableSet> = found
        .into_iter()
        .map(|(vertices, (intrinsic, sequence))| ReachableSet {
            vertices,
            intrinsic,
            sequence,
        })
        .collect();
    sets.sort_by(|a, b| {
        (a.vertices.len(), &a.vertices).cmp(&(b.vertices.len(), &b.vertices))
    });
    Ok(IntrinsicCatalog {
        fingerprint: graph_to_json_string(g),
        sets,
    })
}

fn visit(
    cur: &MixedGraph,
    prefix: &mut FixingSequence,
    found: &mut BTreeMap<VertexSet, (bool, FixingSequence)>,
) -> Result<(), FixError> {
    let remaining = cur.random().clone();
    if remaining.is_empty() || found.contains_key(&remaining) {
        return Ok(());
    }
    let intrinsic = cur.districts().len() == 1;
    found.insert(remaining.clone(), (intrinsic, prefix.clone()));
    for v in &remaining {
        if is_fixable(cur, v)? {
            let next = fix_graph_unchecked(cur, v)?;
            prefix.push(v.clone());
            visit(&next, prefix, found)?;
            prefix.pop();
        }
    }
    Ok(())
}

/// Convenience view of a catalog entry as `(vertices, sequence)` pairs for
/// the intrinsic sets only.
pub fn intrinsic_sets_with_witnesses(
    catalog: &IntrinsicCatalog,
) -> Vec<(VertexSet, FixingSequence)> {
    catalog
        .intrinsic_sets()
        .map(|s| (s.vertices.clone(), s.sequence.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::examples::chain4;
    use graph_core::{vset, VertexId};

    fn vid(s: &str) -> VertexId {
        VertexId::new(s)
    }

    #[test]
    fn chain4_has_thirteen_reachable_five_intrinsic() {
        let catalog = enumerate_reachable(&chain4()).unwrap();
        assert_eq!(catalog.sets.len(), 13);
        let intrinsic: Vec<&VertexSet> =
            catalog.intrinsic_sets().map(|s| &s.vertices).collect();
        assert_eq!(
            intrinsic,
            vec![
                &vset(["A"]),
                &vset(["B"]),
                &vset(["C"]),
                &vset(["D"]),
                &vset(["B", "D"]),
            ]
        );
    }

    #[test]
    fn chain4_witness_sequences() {
        let catalog = enumerate_reachable(&chain4()).unwrap();
        let witness = |s: &VertexSet| catalog.get(s).unwrap().sequence.clone();
        assert_eq!(witness(&vset(["A"])), vec![vid("C"), vid("B"), vid("D")]);
        assert_eq!(witness(&vset(["B"])), vec![vid("A"), vid("C"), vid("D")]);
        assert_eq!(witness(&vset(["C"])), vec![vid("A"), vid("D"), vid("B")]);
        assert_eq!(witness(&vset(["D"])), vec![vid("A"), vid("C"), vid("B")]);
        assert_eq!(witness(&vset(["B", "D"])), vec![vid("A"), vid("C")]);
    }

    #[test]
    fn full_set_is_reachable_with_empty_witness() {
        let catalog = enumerate_reachable(&chain4()).unwrap();
        let full = catalog.get(&vset(["A", "B", "C", "D"])).unwrap();
        assert!(full.sequence.is_empty());
        assert!(!full.intrinsic);
    }

    #[test]
    fn single_vertex_graph() {
        let g = MixedGraph::new(vset(["V"]), VertexSet::new(), [], []).unwrap();
        let catalog = enumerate_reachable(&g).unwrap();
        assert_eq!(catalog.sets.len(), 1);
        assert_eq!(catalog.sets[0].vertices, vset(["V"]));
        assert!(catalog.sets[0].intrinsic);
        assert!(catalog.sets[0].sequence.is_empty());
    }

    #[test]
    fn size_limit_is_enforced() {
        assert_eq!(
            enumerate_reachable_with_limit(&chain4(), 2),
            Err(FixError::TooLarge { n: 4, limit: 2 })
        );
    }

    #[test]
    fn catalog_is_sorted_by_size_then_lexicographically() {
        let catalog = enumerate_reachable(&chain4()).unwrap();
        let keys: Vec<(usize, &VertexSet)> = catalog
            .sets
            .iter()
            .map(|s| (s.vertices.len(), &s.vertices))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
