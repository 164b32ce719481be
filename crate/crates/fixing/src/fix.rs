//! Fixability, the fixing operators on graphs and kernels, and greedy
//! set-fixing.
//!
//! Fixing a random vertex `v` moves it into the context: the graph loses
//! every edge with an arrowhead at `v`, and the kernel is divided by the
//! conditional of `v` given its Markov blanket.  A vertex is *fixable* when
//! its descendants meet its district only in itself, which is exactly the
//! condition under which the quotient is again a well-formed kernel.

use graph_core::{MixedGraph, VertexId, VertexSet};
use kernel_algebra::{condition, marginalize, ratio, KernelExpr};

use crate::error::FixError;

/// An ordered, repeat-free list of vertices fixed one at a time.
pub type FixingSequence = Vec<VertexId>;

/// Result of greedily fixing a whole set: either the reached graph together
/// with the witnessing order, or the subset that could not be fixed.
#[derive(Debug, Clone, PartialEq)]
pub enum FixSetOutcome {
    /// Every requested vertex was fixed, in the order given by `sequence`.
    Reached {
        graph: MixedGraph,
        sequence: FixingSequence,
    },
    /// The greedy loop stalled with these vertices still random.
    Unreachable { stuck: VertexSet },
}

pub(crate) fn singleton(v: &VertexId) -> VertexSet {
    std::iter::once(v.clone()).collect()
}

/// The descendants of `v` that share its district, minus `v` itself: the
/// vertices that block fixing.
pub(crate) fn blocking_set(g: &MixedGraph, v: &VertexId) -> Result<VertexSet, FixError> {
    let dis = g.district_of(v)?;
    let de = g.descendants(&singleton(v))?;
    let mut inter: VertexSet = de.intersection(&dis).cloned().collect();
    inter.remove(v);
    Ok(inter)
}

/// Whether `v` is fixable: `de(v) ∩ dis(v) = {v}`.
///
/// Errors if `v` is fixed or unknown.
pub fn is_fixable(g: &MixedGraph, v: &VertexId) -> Result<bool, FixError> {
    Ok(blocking_set(g, v)?.is_empty())
}

/// The graph fixing operator: moves `v` from random to fixed and deletes
/// every edge with an arrowhead at `v` (directed into it, or bidirected at
/// it).  `v`'s outgoing directed edges survive.
pub fn fix_graph(g: &MixedGraph, v: &VertexId) -> Result<MixedGraph, FixError> {
    let blocking = blocking_set(g, v)?;
    if !blocking.is_empty() {
        return Err(FixError::NotFixable {
            v: v.clone(),
            blocking,
        });
    }
    fix_graph_unchecked(g, v)
}

/// Graph surgery shared by the plain and selection operators; assumes the
/// relevant fixability check has already passed (`v` random is still
/// verified by construction).
pub(crate) fn fix_graph_unchecked(g: &MixedGraph, v: &VertexId) -> Result<MixedGraph, FixError> {
    let mut random = g.random().clone();
    if !random.remove(v) {
        return Err(FixError::Graph(graph_core::GraphError::NotRandom(v.clone())));
    }
    let mut fixed = g.fixed().clone();
    fixed.insert(v.clone());
    let directed: Vec<_> = g
        .directed_edges()
        .filter(|(_, head)| head != v)
        .cloned()
        .collect();
    let bidirected: Vec<_> = g
        .bidirected_edges()
        .filter(|(a, b)| a != v && b != v)
        .cloned()
        .collect();
    Ok(MixedGraph::new(random, fixed, directed, bidirected)?)
}

/// Core of the kernel fixing operator, shared with the selection variant:
/// divide `e` by its conditional of `v` given `(mb(v) ∩ outcomes(e)) \ c`.
///
/// Context variables of `e` (fixed vertices, pinned conditioning) index both
/// numerator and denominator and therefore condition the quotient
/// automatically; only the part of the blanket that is still an outcome
/// needs explicit conditioning.  When that part is empty the denominator is
/// the plain marginal onto `v`, matching the `p(V)/p(v)` form of the
/// childless case.
pub(crate) fn fix_kernel_core(
    e: &KernelExpr,
    v: &VertexId,
    g: &MixedGraph,
    c: &VertexSet,
) -> Result<KernelExpr, FixError> {
    let shape = e.shape()?;
    if !shape.outcomes.contains(v) {
        return Err(FixError::BadKernel(format!(
            "{v} is not an outcome of the kernel"
        )));
    }
    if let Some(w) = shape.outcomes.difference(g.random()).next() {
        return Err(FixError::BadKernel(format!(
            "kernel outcome {w} is not a random vertex of the graph"
        )));
    }
    let mb = g.markov_blanket(v)?;
    let m: VertexSet = mb
        .intersection(&shape.outcomes)
        .filter(|x| !c.contains(*x))
        .cloned()
        .collect();
    let mut sum_out = shape.outcomes.clone();
    sum_out.remove(v);
    for x in &m {
        sum_out.remove(x);
    }
    let den = if m.is_empty() {
        marginalize(e.clone(), sum_out)?
    } else {
        condition(marginalize(e.clone(), sum_out)?, m)?
    };
    Ok(ratio(e.clone(), den)?)
}

/// The kernel fixing operator: `q ↦ q / q(v | mb(v), context)`, emitted as
/// an unsimplified [`KernelExpr::Ratio`].
///
/// Requires `v` fixable in `g` and `v ∈ outcomes(e) ⊆ random(g)`.
pub fn fix_kernel(e: &KernelExpr, v: &VertexId, g: &MixedGraph) -> Result<KernelExpr, FixError> {
    let blocking = blocking_set(g, v)?;
    if !blocking.is_empty() {
        return Err(FixError::NotFixable {
            v: v.clone(),
            blocking,
        });
    }
    fix_kernel_core(e, v, g, &VertexSet::new())
}

/// Greedily fixes every member of `s`: at each step the lexicographically
/// first currently-fixable member is fixed.  Stalling is reported as
/// [`FixSetOutcome::Unreachable`], not as an error.
pub fn fix_set(g: &MixedGraph, s: &VertexSet) -> Result<FixSetOutcome, FixError> {
    for v in s {
        if !g.is_random(v) {
            return Err(FixError::Graph(graph_core::GraphError::NotRandom(v.clone())));
        }
    }
    let mut cur = g.clone();
    let mut remaining = s.clone();
    let mut sequence = FixingSequence::new();
    while !remaining.is_empty() {
        let mut pick = None;
        for v in &remaining {
            if is_fixable(&cur, v)? {
                pick = Some(v.clone());
                break;
            }
        }
        match pick {
            Some(v) => {
                cur = fix_graph_unchecked(&cur, &v)?;
                remaining.remove(&v);
                sequence.push(v);
            }
            None => return Ok(FixSetOutcome::Unreachable { stuck: remaining }),
        }
    }
    Ok(FixSetOutcome::Reached {
        graph: cur,
        sequence,
    })
}

/// Replays a fixing sequence on a graph and kernel together, checking
/// fixability at every step.  Returns the final graph and kernel.
pub fn fix_sequence(
    g: &MixedGraph,
    e: &KernelExpr,
    sequence: &[VertexId],
) -> Result<(MixedGraph, KernelExpr), FixError> {
    let mut cur_g = g.clone();
    let mut cur_e = e.clone();
    for v in sequence {
        cur_e = fix_kernel(&cur_e, v, &cur_g)?;
        cur_g = fix_graph(&cur_g, v)?;
    }
    Ok((cur_g, cur_e))
}
