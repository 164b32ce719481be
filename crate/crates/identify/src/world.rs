//! Shared machinery: world graphs, intrinsic-set membership with kernel
//! replay, strict-parent comparison across worlds, and formula assembly.

use crate::error::IdentError;
use crate::input::Query;
use crate::result::DistrictRecord;
use fixing::FixSetOutcome;
use graph_core::{MixedGraph, VertexId, VertexSet};
use itertools::Itertools;
use kernel_algebra::KernelExpr;
use swig::{marginal_swig, Intervention, Swig};
use std::collections::BTreeMap;

/// Upper bound on `|Y* \ Y|` for the exhaustive margin search.
pub const MARGIN_SEARCH_LIMIT: usize = 16;

/// The world graph of an input: `split(g, b)` projected onto `keep`.
pub(crate) fn input_world(
    g: &MixedGraph,
    b: &Intervention,
    keep: &VertexSet,
) -> Result<Swig, IdentError> {
    Ok(marginal_swig(g, b, keep)?)
}

/// The query world `G(Y′(a))`: `split(g, a)` projected onto `y_prime`.
pub(crate) fn query_world(
    g: &MixedGraph,
    a: &Intervention,
    y_prime: &VertexSet,
) -> Result<Swig, IdentError> {
    Ok(marginal_swig(g, a, y_prime)?)
}

/// Strict parents of `s` in the world, mapped back to base-graph labels
/// (fixed halves report the vertex they were split from).
pub(crate) fn strict_parent_bases(world: &Swig, s: &VertexSet) -> Result<VertexSet, IdentError> {
    let pa = world.graph().strict_parents(s)?;
    Ok(pa.iter().map(|v| world.base_label(v).clone()).collect())
}

/// Rebuilds `g` with exactly `random` kept random: every other vertex
/// becomes fixed, dropping edges with an arrowhead at a newly fixed vertex.
pub(crate) fn with_random(g: &MixedGraph, random: &VertexSet) -> Result<MixedGraph, IdentError> {
    let fixed: VertexSet = g
        .vertices()
        .filter(|v| !random.contains(*v))
        .cloned()
        .collect();
    let directed: Vec<(VertexId, VertexId)> = g
        .directed_edges()
        .filter(|(_, h)| random.contains(h))
        .cloned()
        .collect();
    let bidirected: Vec<(VertexId, VertexId)> = g
        .bidirected_edges()
        .filter(|(a, b)| random.contains(a) && random.contains(b))
        .cloned()
        .collect();
    Ok(MixedGraph::new(random.clone(), fixed, directed, bidirected)?)
}

/// A successful intrinsic-set membership test with its kernel replay.
pub(crate) struct ReplayedKernel {
    pub kernel: KernelExpr,
    pub sequence: Vec<VertexId>,
}

/// Tests `d ∈ I(world)` — everything outside `d` fixable and `d` a single
/// district afterwards — and on success replays the fixing sequence on
/// `base` to produce the district's kernel.
pub(crate) fn district_kernel(
    world: &MixedGraph,
    base: &KernelExpr,
    d: &VertexSet,
) -> Result<Option<ReplayedKernel>, IdentError> {
    let targets: VertexSet = world.random().difference(d).cloned().collect();
    match fixing::fix_set(world, &targets)? {
        FixSetOutcome::Reached { graph, sequence } => {
            if graph.districts().len() != 1 {
                return Ok(None);
            }
            let (_, kernel) = fixing::fix_sequence(world, base, &sequence)?;
            Ok(Some(ReplayedKernel { kernel, sequence }))
        }
        FixSetOutcome::Unreachable { .. } => Ok(None),
    }
}

/// Candidate margins `Y ⊆ Y′ ⊆ Y*` in decreasing cardinality, and within a
/// cardinality in lexicographic order of the added vertices.
pub(crate) fn margin_candidates(y: &VertexSet, y_star: &VertexSet) -> Vec<VertexSet> {
    let extras: Vec<VertexId> = y_star.difference(y).cloned().collect();
    let mut out = Vec::new();
    for k in (0..=extras.len()).rev() {
        for combo in extras.iter().combinations(k) {
            let mut cand = y.clone();
            cand.extend(combo.into_iter().cloned());
            out.push(cand);
        }
    }
    out
}

/// Assembles the identifying functional from per-district factors:
/// the factors multiplied in decreasing topological depth, marginalized
/// over `Y′ \ Y`, and evaluated at the query intervention.  Returns the
/// simplified expression.
pub(crate) fn assemble(
    g: &MixedGraph,
    q: &Query,
    y_prime: &VertexSet,
    records: &[DistrictRecord],
) -> Result<KernelExpr, IdentError> {
    let order: Vec<VertexId> = g.topological_order();
    let position: BTreeMap<VertexId, usize> = order
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let depth = |d: &VertexSet| -> usize {
        d.iter()
            .filter_map(|v| position.get(v))
            .copied()
            .max()
            .unwrap_or(0)
    };
    let mut ordered: Vec<&DistrictRecord> = records.iter().collect();
    ordered.sort_by_key(|r| std::cmp::Reverse(depth(&r.district)));
    let factors: Vec<KernelExpr> = ordered.iter().map(|r| r.kernel.clone()).collect();
    let mut expr = if factors.len() == 1 {
        factors.into_iter().next().expect("nonempty")
    } else {
        kernel_algebra::product(factors)?
    };
    let sum_out: VertexSet = y_prime.difference(&q.y).cloned().collect();
    if !sum_out.is_empty() {
        expr = kernel_algebra::marginalize(expr, sum_out)?;
    }
    if !q.a.is_empty() {
        expr = kernel_algebra::eval_at(expr, q.a.clone())?;
    }
    Ok(kernel_algebra::simplify(&expr))
}
