//! Latent projection of mixed graphs and the marginal-world composition.

use crate::error::SwigError;
use crate::swig::{split, Swig};
use crate::token::Intervention;
use graph_core::{MixedGraph, VertexId, VertexSet};
use std::collections::BTreeSet;

/// Projects `g` onto `keep ⊆ random(g)`, always keeping the fixed vertices.
///
/// The result has a directed edge `u → v` iff `g` has a directed path from
/// `u` to `v` whose intermediate vertices are all dropped, and a bidirected
/// edge `u ↔ v` iff `g` has a connecting walk given `∅` between them whose
/// intermediates are all dropped, with the first edge pointing into `u` and
/// the last into `v` (single bidirected edges included).
pub fn latent_project(g: &MixedGraph, keep: &VertexSet) -> Result<MixedGraph, SwigError> {
    for v in keep {
        if !g.is_random(v) {
            return Err(SwigError::ProjectNotRandom(v.clone()));
        }
    }
    let dropped: VertexSet = g.random().difference(keep).cloned().collect();

    let mut directed: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    // Directed reachability from each surviving tail through dropped
    // intermediates only.
    for u in keep.iter().chain(g.fixed().iter()) {
        let mut frontier = vec![u.clone()];
        let mut seen: VertexSet = VertexSet::from([u.clone()]);
        while let Some(t) = frontier.pop() {
            for (tail, head) in g.directed_edges() {
                if *tail != t || !seen.insert(head.clone()) {
                    continue;
                }
                if keep.contains(head) {
                    directed.insert((u.clone(), head.clone()));
                } else if dropped.contains(head) {
                    frontier.push(head.clone());
                }
            }
        }
    }

    let mut bidirected: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    // Head-to-head connecting walks through dropped intermediates: BFS over
    // (vertex, arrived-with-arrowhead-here) states.  Intermediates must be
    // non-colliders (the walk is conditioned on ∅), so a head arrival can
    // only continue out of a directed tail.
    fn push(
        state: (VertexId, bool),
        frontier: &mut Vec<(VertexId, bool)>,
        seen: &mut BTreeSet<(VertexId, bool)>,
    ) {
        if seen.insert(state.clone()) {
            frontier.push(state);
        }
    }
    for u in keep {
        let mut frontier: Vec<(VertexId, bool)> = Vec::new();
        let mut seen: BTreeSet<(VertexId, bool)> = BTreeSet::new();
        // First step: leave `u` along an edge with its arrowhead at `u`.
        for (tail, head) in g.directed_edges() {
            if head == u {
                push((tail.clone(), false), &mut frontier, &mut seen);
            }
        }
        for (a, b) in g.bidirected_edges() {
            if a == u {
                push((b.clone(), true), &mut frontier, &mut seen);
            } else if b == u {
                push((a.clone(), true), &mut frontier, &mut seen);
            }
        }
        while let Some((v, head_here)) = frontier.pop() {
            if keep.contains(&v) {
                // Arrived at a survivor: a bidirected edge exists iff the
                // final edge pointed into it.
                if head_here && v != *u {
                    let (lo, hi) = if *u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
                    bidirected.insert((lo, hi));
                }
                continue; // survivors cannot be intermediates
            }
            if !dropped.contains(&v) {
                continue; // fixed vertices block (no arrowheads into them)
            }
            if head_here {
                // Non-collider continuation out of a head arrival: leave via
                // a directed edge out of `v`.
                for (tail, head) in g.directed_edges() {
                    if tail == &v {
                        push((head.clone(), true), &mut frontier, &mut seen);
                    }
                }
            } else {
                // Tail arrival: any continuation keeps `v` a non-collider.
                for (tail, head) in g.directed_edges() {
                    if tail == &v {
                        push((head.clone(), true), &mut frontier, &mut seen);
                    } else if head == &v {
                        push((tail.clone(), false), &mut frontier, &mut seen);
                    }
                }
                for (a, b) in g.bidirected_edges() {
                    if a == &v {
                        push((b.clone(), true), &mut frontier, &mut seen);
                    } else if b == &v {
                        push((a.clone(), true), &mut frontier, &mut seen);
                    }
                }
            }
        }
    }

    Ok(MixedGraph::new(
        keep.clone(),
        g.fixed().clone(),
        directed,
        bidirected,
    )?)
}

/// The marginal world graph `G(S(a))`: split at `a`, then project onto
/// `keep` (fixed halves always survive).  `keep = random(g)` reduces to
/// `split` alone; projecting and splitting commute where both orders are
/// defined, so the composition order is a pure implementation choice.
pub fn marginal_swig(
    g: &MixedGraph,
    a: &Intervention,
    keep: &VertexSet,
) -> Result<Swig, SwigError> {
    for v in keep {
        if !g.is_random(v) {
            return Err(SwigError::ProjectNotRandom(v.clone()));
        }
    }
    let world = split(g, a)?;
    world.project(keep)
}
