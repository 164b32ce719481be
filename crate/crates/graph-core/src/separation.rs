//! m-separation on mixed graphs.
//!
//! Implemented as a moralization-free reachability walk (a Bayes-ball style
//! search generalized to bidirected edges).  A walk is *connecting* given a
//! conditioning set `Z` when every intermediate collider on it lies in `Z`
//! and every intermediate non-collider lies outside `Z`; `x` and `y` are
//! m-separated given `z` when no connecting walk exists between them given
//! `z ∪ fixed`.  Over walks this is equivalent to the usual path criterion
//! (a collider that is merely an ancestor of `Z` can be rerouted through its
//! descendant in `Z`), and it keeps the search a plain state-space BFS.

use crate::error::GraphError;
use crate::graph::MixedGraph;
use crate::vertex::{VertexId, VertexSet};
use std::collections::BTreeSet;

/// One step's incidence at a vertex: did the traversed edge point into it?
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Arrival {
    /// Arrived along an edge with an arrowhead at this vertex
    /// (forward directed edge, or bidirected).
    Head,
    /// Arrived against a directed edge (no arrowhead at this vertex).
    Tail,
}

/// An edge incident to a vertex, from that vertex's point of view.
struct Incidence<'g> {
    /// The opposite endpoint.
    other: &'g VertexId,
    /// Whether the edge has an arrowhead at *this* vertex.
    head_here: bool,
    /// Whether the edge has an arrowhead at the opposite endpoint.
    head_there: bool,
}

fn incidences<'g>(g: &'g MixedGraph, v: &VertexId) -> Vec<Incidence<'g>> {
    let mut out = Vec::new();
    for (tail, head) in g.directed_edges() {
        if tail == v {
            out.push(Incidence { other: head, head_here: false, head_there: true });
        } else if head == v {
            out.push(Incidence { other: tail, head_here: true, head_there: false });
        }
    }
    for (a, b) in g.bidirected_edges() {
        if a == v {
            out.push(Incidence { other: b, head_here: true, head_there: true });
        } else if b == v {
            out.push(Incidence { other: a, head_here: true, head_there: true });
        }
    }
    out
}

/// Whether `x` and `y` are m-separated given `z` in `g`, with the fixed
/// vertices of `g` implicitly added to the conditioning set.
///
/// Preconditions: `x`, `y`, `z` are pairwise disjoint subsets of the
/// vertices, and `x`, `y` are non-empty.  Endpoints are exempt from
/// blocking; intermediate vertices follow the collider rules.
pub fn m_separated(
    g: &MixedGraph,
    x: &VertexSet,
    y: &VertexSet,
    z: &VertexSet,
) -> Result<bool, GraphError> {
    if x.is_empty() || y.is_empty() {
        return Err(GraphError::EmptyEndpointSet);
    }
    for (a, b) in [(x, y), (x, z), (y, z)] {
        if let Some(v) = a.intersection(b).next() {
            return Err(GraphError::SeparationOverlap(v.clone()));
        }
    }
    for v in x.iter().chain(y.iter()).chain(z.iter()) {
        if !g.contains(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
    }

    let mut cond: VertexSet = z.clone();
    cond.extend(g.fixed().iter().cloned());

    // BFS over (vertex, arrival) states.
    let mut visited: BTreeSet<(VertexId, Arrival)> = BTreeSet::new();
    let mut frontier: Vec<(VertexId, Arrival)> = Vec::new();

    // Leaving a source endpoint is always allowed.
    for src in x {
        for inc in incidences(g, src) {
            let arr = if inc.head_there { Arrival::Head } else { Arrival::Tail };
            let state = (inc.other.clone(), arr);
            if visited.insert(state.clone()) {
                frontier.push(state);
            }
        }
    }

    while let Some((v, arrival)) = frontier.pop() {
        if y.contains(&v) {
            return Ok(false); // connecting walk found
        }
        if x.contains(&v) {
            // Re-entering the source set: walks through an endpoint are
            // covered by the initial seeding.
            continue;
        }
        for inc in incidences(g, &v) {
            let collider = arrival == Arrival::Head && inc.head_here;
            let passable = if collider { cond.contains(&v) } else { !cond.contains(&v) };
            if !passable {
                continue;
            }
            let arr = if inc.head_there { Arrival::Head } else { Arrival::Tail };
            let state = (inc.other.clone(), arr);
            if visited.insert(state.clone()) {
                frontier.push(state);
            }
        }
    }
    Ok(true)
}
