//! The world-graph value type and node splitting.

use crate::error::SwigError;
use crate::token::{Intervention, ValueToken};
use graph_core::{MixedGraph, VertexId, VertexSet};
use std::collections::BTreeMap;

/// A world graph `G(V(a))` (possibly marginal): a conditional mixed graph
/// whose fixed vertices are the intervention's fixed halves, together with
/// the value token each fixed half carries and the base vertex it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Swig {
    graph: MixedGraph,
    values: BTreeMap<VertexId, ValueToken>,
    base: BTreeMap<VertexId, VertexId>,
}

impl Swig {
    /// The underlying conditional graph.
    pub fn graph(&self) -> &MixedGraph {
        &self.graph
    }

    /// The token each fixed half carries, keyed by fixed-half label.
    pub fn values(&self) -> &BTreeMap<VertexId, ValueToken> {
        &self.values
    }

    /// The base vertex a fixed half was split from.
    pub fn base_of(&self, fixed_half: &VertexId) -> Option<&VertexId> {
        self.base.get(fixed_half)
    }

    /// The fixed-half label for a base vertex, if that vertex was split.
    pub fn half_of(&self, base: &VertexId) -> Option<&VertexId> {
        self.base
            .iter()
            .find(|(_, b)| *b == base)
            .map(|(half, _)| half)
    }

    /// Maps a vertex of the world graph to its base-graph label: fixed
    /// halves map through the split bookkeeping, random vertices to
    /// themselves.
    pub fn base_label<'s>(&'s self, v: &'s VertexId) -> &'s VertexId {
        self.base.get(v).unwrap_or(v)
    }

    /// Projects the world graph onto `keep ⊆ random`, keeping every fixed
    /// half.
    pub fn project(&self, keep: &VertexSet) -> Result<Swig, SwigError> {
        let graph = crate::project::latent_project(&self.graph, keep)?;
        Ok(Swig {
            graph,
            values: self.values.clone(),
            base: self.base.clone(),
        })
    }

    pub(crate) fn from_parts(
        graph: MixedGraph,
        values: BTreeMap<VertexId, ValueToken>,
        base: BTreeMap<VertexId, VertexId>,
    ) -> Swig {
        Swig { graph, values, base }
    }
}

/// The label a fixed half carries: the token's label for symbolic tokens,
/// `"Base=k"` for concrete level `k`.
pub(crate) fn half_label(base: &VertexId, token: &ValueToken) -> VertexId {
    match token {
        ValueToken::Symbolic(s) => VertexId::new(s.clone()),
        ValueToken::Concrete(k) => VertexId::new(format!("{base}={k}")),
    }
}

/// Splits `g` at `a`, producing the world graph `G(V(a))`.
///
/// Each intervened vertex keeps its incoming directed edges and all its
/// bidirected edges at the random half; a new fixed half (labelled by the
/// token) receives the outgoing directed edges.  Splitting with `a = ∅` is
/// the identity.
///
/// Errors when `g` already has fixed vertices, an intervention target is
/// unknown, or a generated fixed-half label collides with another vertex.
pub fn split(g: &MixedGraph, a: &Intervention) -> Result<Swig, SwigError> {
    if let Some(w) = g.fixed().iter().next() {
        return Err(SwigError::AlreadyConditional(w.clone()));
    }
    let mut values = BTreeMap::new();
    let mut base = BTreeMap::new();
    let mut fixed = VertexSet::new();
    for (k, token) in a.iter() {
        if !g.is_random(k) {
            return Err(SwigError::BadTarget(k.clone()));
        }
        let half = half_label(k, token);
        if g.contains(&half) || fixed.contains(&half) {
            return Err(SwigError::LabelCollision(half));
        }
        fixed.insert(half.clone());
        values.insert(half.clone(), token.clone());
        base.insert(half, k.clone());
    }

    let reroute = |t: &VertexId| -> VertexId {
        match a.get(t) {
            Some(token) => half_label(t, token),
            None => t.clone(),
        }
    };
    let directed: Vec<(VertexId, VertexId)> = g
        .directed_edges()
        .map(|(t, h)| (reroute(t), h.clone()))
        .collect();
    let bidirected: Vec<(VertexId, VertexId)> = g.bidirected_edges().cloned().collect();

    let graph = MixedGraph::new(g.random().clone(), fixed, directed, bidirected)?;
    Ok(Swig::from_parts(graph, values, base))
}

/// `Y* = an_{G(V(a))}(Y) \ keys(a)`: the ancestors of `y` in the split
/// graph, restricted to random vertices — the causally relevant margin of a
/// query `p(Y(a))`.
pub fn ystar(g: &MixedGraph, y: &VertexSet, a: &Intervention) -> Result<VertexSet, SwigError> {
    let keys = a.keys();
    if let Some(v) = y.intersection(&keys).next() {
        return Err(SwigError::OutcomeIntervened(v.clone()));
    }
    let world = split(g, a)?;
    let an = world.graph.ancestors(y)?;
    Ok(an
        .intersection(world.graph.random())
        .cloned()
        .collect())
}

/// The minimal world labelling for display: for each random vertex `v` of
/// the world `G(V(b))`, the tokens of those intervened vertices whose fixed
/// half is an ancestor of `v` in the split graph (in key order).  A vertex
/// with no entry displays without any world suffix — e.g. under `do(x2)` in
/// a graph where `X2` has no directed path to `W`, the vertex `W` displays
/// plain while downstream vertices display `(x_2)`.
pub fn world_labels(
    g: &MixedGraph,
    b: &Intervention,
) -> Result<BTreeMap<VertexId, Vec<ValueToken>>, SwigError> {
    let world = split(g, b)?;
    let mut out: BTreeMap<VertexId, Vec<ValueToken>> = BTreeMap::new();
    for (k, token) in b.iter() {
        let half = world.half_of(k).expect("split target has a half").clone();
        let de = world
            .graph
            .descendants(&VertexSet::from([half]))?;
        for v in de.intersection(world.graph.random()) {
            out.entry(v.clone()).or_default().push(token.clone());
        }
    }
    Ok(out)
}
