//! The mixed-graph value type and its structural queries.

use crate::error::GraphError;
use crate::vertex::{VertexId, VertexSet};
use std::collections::{BTreeMap, BTreeSet};

/// A conditional acyclic directed mixed graph `G(V, W)`.
///
/// * `random` — the random vertices `V`;
/// * `fixed` — the fixed (context) vertices `W`;
/// * `directed` — ordered pairs `(tail, head)`;
/// * `bidirected` — unordered pairs, stored sorted.
///
/// Invariants, enforced by [`MixedGraph::new`]:
///
/// * `random ∩ fixed = ∅`, and every edge endpoint is a vertex;
/// * the directed part is acyclic;
/// * no arrowhead points into a fixed vertex (no directed head in `fixed`,
///   no bidirected edge touching `fixed`);
/// * no self-loops. Duplicate edges cannot be represented (edges are sets).
///
/// The value is immutable; operations that "modify" a graph construct a new
/// one through [`MixedGraph::new`], re-validating every invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MixedGraph {
    random: VertexSet,
    fixed: VertexSet,
    directed: BTreeSet<(VertexId, VertexId)>,
    bidirected: BTreeSet<(VertexId, VertexId)>,
}

/// The genealogical relation computed by [`MixedGraph::relatives`].
///
/// `Ancestors` and `Descendants` are reflexive (`X ∈ an(X)`, `X ∈ de(X)`),
/// matching the convention `an(X) ∩ de(X) ∩ dis(X) = {X}`; `Parents`,
/// `Children`, and `Siblings` are not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelativeKind {
    /// Tails of directed edges into the set.
    Parents,
    /// Heads of directed edges out of the set.
    Children,
    /// Reflexive transitive closure of `Parents`.
    Ancestors,
    /// Reflexive transitive closure of `Children`.
    Descendants,
    /// Opposite endpoints of bidirected edges at the set.
    Siblings,
}

impl MixedGraph {
    /// Builds a graph, validating every structural invariant.
    ///
    /// Bidirected pairs may be given in either order; they are normalized to
    /// sorted order internally.
    pub fn new(
        random: VertexSet,
        fixed: VertexSet,
        directed: impl IntoIterator<Item = (VertexId, VertexId)>,
        bidirected: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        for v in random.iter().chain(fixed.iter()) {
            if v.as_str().is_empty() {
                return Err(GraphError::EmptyLabel);
            }
        }
        if let Some(v) = random.intersection(&fixed).next() {
            return Err(GraphError::RandomFixedOverlap(v.clone()));
        }

        let mut g = MixedGraph {
            random,
            fixed,
            directed: BTreeSet::new(),
            bidirected: BTreeSet::new(),
        };

        for (tail, head) in directed {
            g.check_endpoint(&tail)?;
            g.check_endpoint(&head)?;
            if tail == head {
                return Err(GraphError::SelfLoop(tail));
            }
            if g.fixed.contains(&head) {
                return Err(GraphError::ArrowheadIntoFixed(head));
            }
            if !g.directed.insert((tail.clone(), head.clone())) {
                return Err(GraphError::DuplicateEdge {
                    kind: "directed",
                    a: tail,
                    b: head,
                });
            }
        }
        for (a, b) in bidirected {
            g.check_endpoint(&a)?;
            g.check_endpoint(&b)?;
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for e in [&a, &b] {
                if g.fixed.contains(e) {
                    return Err(GraphError::ArrowheadIntoFixed(e.clone()));
                }
            }
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            if !g.bidirected.insert((lo.clone(), hi.clone())) {
                return Err(GraphError::DuplicateEdge {
                    kind: "bidirected",
                    a: lo,
                    b: hi,
                });
            }
        }

        g.check_acyclic()?;
        Ok(g)
    }

    fn check_endpoint(&self, v: &VertexId) -> Result<(), GraphError> {
        if self.random.contains(v) || self.fixed.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v.clone()))
        }
    }

    fn check_acyclic(&self) -> Result<(), GraphError> {
        // Kahn's algorithm over all vertices; leftover in-degree means a cycle.
        let mut indeg: BTreeMap<&VertexId, usize> =
            self.vertices().map(|v| (v, 0)).collect();
        for (_, head) in &self.directed {
            *indeg.get_mut(head).expect("validated endpoint") += 1;
        }
        let mut ready: BTreeSet<&VertexId> = indeg
            .iter()
            .filter(|(_, d)| **d == 0)
            .map(|(v, _)| *v)
            .collect();
        let mut seen = 0usize;
        while let Some(v) = ready.iter().next().cloned() {
            ready.remove(v);
            seen += 1;
            for (tail, head) in &self.directed {
                if tail == v {
                    let d = indeg.get_mut(head).expect("validated endpoint");
                    *d -= 1;
                    if *d == 0 {
                        ready.insert(head);
                    }
                }
            }
        }
        if seen == indeg.len() {
            Ok(())
        } else {
            let culprit = indeg
                .iter()
                .filter(|(_, d)| **d > 0)
                .map(|(v, _)| (*v).clone())
                .next()
                .expect("cycle implies positive in-degree");
            Err(GraphError::Cycle(culprit))
        }
    }

    /// The random vertices `V`.
    pub fn random(&self) -> &VertexSet {
        &self.random
    }

    /// The fixed vertices `W`.
    pub fn fixed(&self) -> &VertexSet {
        &self.fixed
    }

    /// All vertices, random then fixed is *not* the order — iteration is
    /// lexicographic within each status; use [`MixedGraph::topological_order`]
    /// for the canonical ordering.
    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.random.iter().chain(self.fixed.iter())
    }

    /// Whether `v` is a vertex of the graph (random or fixed).
    pub fn contains(&self, v: &VertexId) -> bool {
        self.random.contains(v) || self.fixed.contains(v)
    }

    /// Whether `v` is a random vertex.
    pub fn is_random(&self, v: &VertexId) -> bool {
        self.random.contains(v)
    }

    /// Whether `v` is a fixed vertex.
    pub fn is_fixed(&self, v: &VertexId) -> bool {
        self.fixed.contains(v)
    }

    /// The directed edges `(tail, head)`.
    pub fn directed_edges(&self) -> impl Iterator<Item = &(VertexId, VertexId)> {
        self.directed.iter()
    }

    /// The bidirected edges as sorted pairs.
    pub fn bidirected_edges(&self) -> impl Iterator<Item = &(VertexId, VertexId)> {
        self.bidirected.iter()
    }

    /// Number of edges of both kinds.
    pub fn edge_count(&self) -> usize {
        self.directed.len() + self.bidirected.len()
    }

    fn check_members(&self, s: &VertexSet) -> Result<(), GraphError> {
        for v in s {
            self.check_endpoint(v)?;
        }
        Ok(())
    }

    /// Genealogical relatives of a set, with disjunctive-union semantics over
    /// members: `relatives(s, k) = ∪_{v ∈ s} relatives({v}, k)`.
    ///
    /// Errors if `s` contains an unknown vertex.
    pub fn relatives(&self, s: &VertexSet, kind: RelativeKind) -> Result<VertexSet, GraphError> {
        self.check_members(s)?;
        Ok(match kind {
            RelativeKind::Parents => self
                .directed
                .iter()
                .filter(|(_, h)| s.contains(h))
                .map(|(t, _)| t.clone())
                .collect(),
            RelativeKind::Children => self
                .directed
                .iter()
                .filter(|(t, _)| s.contains(t))
                .map(|(_, h)| h.clone())
                .collect(),
            RelativeKind::Siblings => self
                .bidirected
                .iter()
                .flat_map(|(a, b)| {
                    let mut out = Vec::new();
                    if s.contains(a) {
                        out.push(b.clone());
                    }
                    if s.contains(b) {
                        out.push(a.clone());
                    }
                    out
                })
                .collect(),
            RelativeKind::Ancestors => self.closure(s, |v| {
                self.directed
                    .iter()
                    .filter(|(_, h)| h == v)
                    .map(|(t, _)| t.clone())
                    .collect()
            }),
            RelativeKind::Descendants => self.closure(s, |v| {
                self.directed
                    .iter()
                    .filter(|(t, _)| t == v)
                    .map(|(_, h)| h.clone())
                    .collect()
            }),
        })
    }

    fn closure(&self, s: &VertexSet, step: impl Fn(&VertexId) -> Vec<VertexId>) -> VertexSet {
        let mut out: VertexSet = s.clone();
        let mut frontier: Vec<VertexId> = s.iter().cloned().collect();
        while let Some(v) = frontier.pop() {
            for w in step(&v) {
                if out.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        out
    }

    /// `pa(s)`: tails of directed edges into `s` (not reflexive).
    pub fn parents(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        self.relatives(s, RelativeKind::Parents)
    }

    /// `ch(s)`: heads of directed edges out of `s` (not reflexive).
    pub fn children(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        self.relatives(s, RelativeKind::Children)
    }

    /// `an(s)`: reflexive ancestors; may include fixed vertices.
    pub fn ancestors(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        self.relatives(s, RelativeKind::Ancestors)
    }

    /// `de(s)`: reflexive descendants.
    pub fn descendants(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        self.relatives(s, RelativeKind::Descendants)
    }

    /// `sib(s)`: bidirected neighbours (not reflexive).
    pub fn siblings(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        self.relatives(s, RelativeKind::Siblings)
    }

    /// `pa^s(s) = pa(s) \ s`: the strict parents.
    pub fn strict_parents(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        Ok(self.parents(s)?.difference(s).cloned().collect())
    }

    /// `dis(v)`: the district (c-component) of `v` — the bidirected-connected
    /// component of `v` within the random vertices.  Reflexive.
    ///
    /// Errors if `v` is fixed or unknown.
    pub fn district_of(&self, v: &VertexId) -> Result<VertexSet, GraphError> {
        self.check_endpoint(v)?;
        if !self.random.contains(v) {
            return Err(GraphError::NotRandom(v.clone()));
        }
        let mut out = VertexSet::new();
        out.insert(v.clone());
        let mut frontier = vec![v.clone()];
        while let Some(u) = frontier.pop() {
            for (a, b) in &self.bidirected {
                let other = if *a == u {
                    b
                } else if *b == u {
                    a
                } else {
                    continue;
                };
                if self.random.contains(other) && out.insert(other.clone()) {
                    frontier.push(other.clone());
                }
            }
        }
        Ok(out)
    }

    /// The partition of the random vertices into districts, ordered by their
    /// smallest member.
    pub fn districts(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in &self.random {
            if !seen.contains(v) {
                let d = self.district_of(v).expect("random vertex");
                seen.extend(d.iter().cloned());
                out.push(d);
            }
        }
        out
    }

    /// The ordered Markov blanket `mb(v) = (dis(v) ∪ pa(dis(v))) \ {v}`.
    /// May include fixed vertices through the parent part.
    pub fn markov_blanket(&self, v: &VertexId) -> Result<VertexSet, GraphError> {
        let dis = self.district_of(v)?;
        let mut out = self.parents(&dis)?;
        out.extend(dis.iter().cloned());
        out.remove(v);
        Ok(out)
    }

    /// The induced subgraph on `s`: vertex statuses preserved, edges of the
    /// graph with both endpoints in `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<MixedGraph, GraphError> {
        self.check_members(s)?;
        MixedGraph::new(
            self.random.intersection(s).cloned().collect(),
            self.fixed.intersection(s).cloned().collect(),
            self.directed
                .iter()
                .filter(|(t, h)| s.contains(t) && s.contains(h))
                .cloned()
                .collect::<Vec<_>>(),
            self.bidirected
                .iter()
                .filter(|(a, b)| s.contains(a) && s.contains(b))
                .cloned()
                .collect::<Vec<_>>(),
        )
    }

    /// The canonical deterministic total order: all fixed vertices first
    /// (lexicographically), then a topological order of the random vertices
    /// with lexicographic tie-breaks.
    ///
    /// This is a valid topological order of the whole graph because fixed
    /// vertices never have incoming edges.
    pub fn topological_order(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.fixed.iter().cloned().collect();
        // In-degrees among random vertices only.
        let mut indeg: BTreeMap<&VertexId, usize> =
            self.random.iter().map(|v| (v, 0)).collect();
        for (tail, head) in &self.directed {
            if self.random.contains(tail) && self.random.contains(head) {
                *indeg.get_mut(head).expect("random head") += 1;
            }
        }
        let mut ready: BTreeSet<&VertexId> = indeg
            .iter()
            .filter(|(_, d)| **d == 0)
            .map(|(v, _)| *v)
            .collect();
        while let Some(v) = ready.iter().next().cloned() {
            ready.remove(v);
            out.push(v.clone());
            for (tail, head) in &self.directed {
                if tail == v && self.random.contains(head) {
                    let d = indeg.get_mut(head).expect("random head");
                    *d -= 1;
                    if *d == 0 {
                        ready.insert(head);
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), self.random.len() + self.fixed.len());
        out
    }

    /// Whether `s` is ancestral among the random vertices: for each `v ∈ s`,
    /// `an(v) ∩ random ⊆ s`.
    pub fn is_ancestral(&self, s: &VertexSet) -> Result<bool, GraphError> {
        let an = self.ancestors(s)?;
        Ok(an.intersection(&self.random).all(|v| s.contains(v)))
    }
}
