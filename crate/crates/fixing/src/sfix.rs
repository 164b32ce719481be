//! Selection fixing: the fixing operators in the presence of a conditioned
//! vertex set `C`, and constrained search for valid s-fixing sequences.
//!
//! A vertex `v` is *s-fixable* under `C` when no conditioned vertex descends
//! from it and the ordinary fixability condition holds.  The graph operator
//! is unchanged; the kernel operator divides by the conditional of `v` given
//! the part of its Markov blanket outside `C`, with the conditioned
//! variables held at their recorded values (they are context variables of
//! the kernel, so they carry over automatically).

use std::collections::BTreeSet;

use graph_core::{MixedGraph, VertexId, VertexSet};
use kernel_algebra::KernelExpr;
use swig::Intervention;

use crate::error::FixError;
use crate::fix::{fix_graph_unchecked, fix_kernel_core, singleton, FixingSequence};

/// The descendants of `v` that block s-fixing: district members other than
/// `v`, plus conditioned vertices.
fn s_blocking_set(g: &MixedGraph, v: &VertexId, c: &VertexSet) -> Result<VertexSet, FixError> {
    if c.contains(v) {
        return Err(FixError::InSelection(v.clone()));
    }
    for x in c {
        if !g.is_random(x) {
            return Err(FixError::Graph(graph_core::GraphError::NotRandom(x.clone())));
        }
    }
    let dis = g.district_of(v)?;
    let de = g.descendants(&singleton(v))?;
    let mut blocking: VertexSet = de.intersection(&dis).cloned().collect();
    blocking.remove(v);
    blocking.extend(de.intersection(c).cloned());
    Ok(blocking)
}

/// Whether `v` is s-fixable under the conditioned set `c`:
/// `c ∩ de(v) = ∅` and `de(v) ∩ dis(v) = {v}`.
///
/// With `c = ∅` this coincides with [`crate::is_fixable`].  Errors if `v`
/// is in `c`, fixed, or unknown, or if `c` contains a non-random vertex.
pub fn is_s_fixable(g: &MixedGraph, v: &VertexId, c: &VertexSet) -> Result<bool, FixError> {
    Ok(s_blocking_set(g, v, c)?.is_empty())
}

/// The graph part of the s-fixing operator; identical surgery to
/// [`crate::fix_graph`] behind the s-fixability check.
pub fn s_fix_graph(g: &MixedGraph, v: &VertexId, c: &VertexSet) -> Result<MixedGraph, FixError> {
    let blocking = s_blocking_set(g, v, c)?;
    if !blocking.is_empty() {
        return Err(FixError::NotSFixable {
            v: v.clone(),
            blocking,
        });
    }
    fix_graph_unchecked(g, v)
}

/// The kernel part of the s-fixing operator: divide by the conditional of
/// `v` given `(mb(v) ∩ outcomes(e)) \ c`, emitted unsimplified.
///
/// `c_values` records the level each conditioned variable is held at; its
/// keys must lie in `c`.  The values do not alter the emitted expression —
/// conditioned variables are context variables of `e`, recorded (and, when
/// pinned, already sliced) in its leaves — but the parameter keeps call
/// sites explicit about which world the selection lives in.
pub fn s_fix_kernel(
    e: &KernelExpr,
    v: &VertexId,
    c: &VertexSet,
    c_values: &Intervention,
    g: &MixedGraph,
) -> Result<KernelExpr, FixError> {
    let blocking = s_blocking_set(g, v, c)?;
    if !blocking.is_empty() {
        return Err(FixError::NotSFixable {
            v: v.clone(),
            blocking,
        });
    }
    for (k, _) in c_values.iter() {
        if !c.contains(k) {
            return Err(FixError::BadKernel(format!(
                "recorded value for {k} names a variable outside the conditioned set"
            )));
        }
    }
    fix_kernel_core(e, v, g, c)
}

/// Replays an s-fixing sequence on a graph and kernel together, checking
/// s-fixability at every step.
pub fn s_fix_sequence(
    g: &MixedGraph,
    e: &KernelExpr,
    sequence: &[VertexId],
    c: &VertexSet,
    c_values: &Intervention,
) -> Result<(MixedGraph, KernelExpr), FixError> {
    let mut cur_g = g.clone();
    let mut cur_e = e.clone();
    for v in sequence {
        cur_e = s_fix_kernel(&cur_e, v, c, c_values, &cur_g)?;
        cur_g = s_fix_graph(&cur_g, v, c)?;
    }
    Ok((cur_g, cur_e))
}

/// Searches for a valid s-fixing sequence covering `targets`, by
/// backtracking depth-first search.
///
/// Candidates are tried in reverse topological order of the *original*
/// graph, which biases the search toward sequences that fix effects before
/// their causes.  When `suffix_constraint` is given, its members are only
/// eligible once every other target is already fixed, so they form the tail
/// of the sequence.  Returns `Ok(None)` when no valid sequence exists;
/// failed remainders are memoized, so the search is exponential only in
/// pathological inputs.
pub fn find_s_fixing_sequence(
    g: &MixedGraph,
    targets: &VertexSet,
    c: &VertexSet,
    suffix_constraint: Option<&VertexSet>,
) -> Result<Option<FixingSequence>, FixError> {
    if let Some(v) = targets.intersection(c).next() {
        return Err(FixError::InSelection(v.clone()));
    }
    for v in targets {
        if !g.is_random(v) {
            return Err(FixError::Graph(graph_core::GraphError::NotRandom(v.clone())));
        }
    }
    let empty = VertexSet::new();
    let suffix = suffix_constraint.unwrap_or(&empty);
    if let Some(v) = suffix.difference(targets).next() {
        return Err(FixError::SuffixNotTarget(v.clone()));
    }
    let order: Vec<VertexId> = g
        .topological_order()
        .into_iter()
        .rev()
        .filter(|v| targets.contains(v))
        .collect();
    let mut failed: BTreeSet<VertexSet> = BTreeSet::new();
    let mut sequence = FixingSequence::new();
    let found = search(
        g,
        &targets.clone(),
        c,
        suffix,
        &order,
        &mut sequence,
        &mut failed,
    )?;
    Ok(if found { Some(sequence) } else { None })
}

fn search(
    cur: &MixedGraph,
    remaining: &VertexSet,
    c: &VertexSet,
    suffix: &VertexSet,
    order: &[VertexId],
    sequence: &mut FixingSequence,
    failed: &mut BTreeSet<VertexSet>,
) -> Result<bool, FixError> {
    if remaining.is_empty() {
        return Ok(true);
    }
    if failed.contains(remaining) {
        return Ok(false);
    }
    let suffix_phase = remaining.is_subset(suffix);
    for v in order {
        if !remaining.contains(v) {
            continue;
        }
        if !suffix_phase && suffix.contains(v) {
            continue;
        }
        if !is_s_fixable(cur, v, c)? {
            continue;
        }
        let next_graph = fix_graph_unchecked(cur, v)?;
        let mut next_remaining = remaining.clone();
        next_remaining.remove(v);
        sequence.push(v.clone());
        if search(&next_graph, &next_remaining, c, suffix, order, sequence, failed)? {
            return Ok(true);
        }
        sequence.pop();
    }
    failed.insert(remaining.clone());
    Ok(false)
}
