//! Identification from a single conditional input: the selection lemma.
//!
//! Given `p({S \ C}(b) | C(b) = c)` — data observed only within a
//! selected stratum — a district kernel is recovered by s-fixing a
//! superset `Z` of the district so that the conditioning never has to be
//! marginalized over: the members of the top district `D̄` are fixed last,
//! their kernels re-assembled from Markov-blanket conditionals, and the
//! leftover `D̄ \ D` fixed ordinarily.

use crate::error::IdentError;
use crate::input::{InputDist, Query};
use crate::result::{DistrictRecord, IdentResult};
use crate::world::{assemble, input_world, query_world, with_random};
use fixing::FixSetOutcome;
use graph_core::{MixedGraph, VertexId, VertexSet};
use itertools::Itertools;
use kernel_algebra::KernelExpr;
use swig::Swig;

/// A district factor recovered through the selection machinery.
pub(crate) struct SelectionFactor {
    pub kernel: KernelExpr,
    pub z_set: VertexSet,
    pub d_bar: VertexSet,
    pub prefix: Vec<VertexId>,
    pub suffix: Vec<VertexId>,
}

/// The union of districts meeting `d` after mechanically fixing `z \ X`,
/// iterated to its least fixpoint.  Returns the fixpoint when it stays
/// inside `z` and is a single district (the top district `D̄`), else
/// `None`.
fn top_district(
    g: &MixedGraph,
    z: &VertexSet,
    d: &VertexSet,
) -> Result<Option<VertexSet>, IdentError> {
    let all_random = g.random().clone();
    let mut x = d.clone();
    loop {
        let to_fix: VertexSet = z.difference(&x).cloned().collect();
        let keep: VertexSet = all_random.difference(&to_fix).cloned().collect();
        let gx = with_random(g, &keep)?;
        let mut next = VertexSet::new();
        for v in d {
            next.extend(gx.district_of(v)?);
        }
        if !next.is_subset(z) {
            return Ok(None);
        }
        if next == x {
            // Must be one district, not a union of several.
            let first = d.iter().next().expect("districts are nonempty");
            if gx.district_of(first)? != x {
                return Ok(None);
            }
            return Ok(Some(x));
        }
        x = next;
    }
}

/// Recovers the kernel of district `d` from a (possibly conditional)
/// input, searching fixed-last supersets `Z ⊇ D` in increasing size.
///
/// For each candidate `Z`:  the top district `D̄` is the least fixpoint of
/// districts meeting `D` under mechanical fixing of `Z \ D̄`; an s-fixing
/// sequence for `Z` given the conditioning set, constrained to fix `D̄`
/// last, is searched; the prefix is replayed on the input's expression;
/// the `D̄` kernels are then rebuilt as Markov-blanket conditionals in
/// topological order, and `D̄ \ D` is fixed ordinarily inside the
/// resulting graph.
pub(crate) fn selection_district(
    world: &Swig,
    input: &InputDist,
    base: &KernelExpr,
    d: &VertexSet,
) -> Result<Option<SelectionFactor>, IdentError> {
    if !d.is_subset(&input.outcomes) {
        return Ok(None);
    }
    let g = world.graph();
    let c = &input.given;
    let c_values = input.pinned_level.clone().unwrap_or_default();
    let pool: Vec<VertexId> = input.outcomes.difference(d).cloned().collect();

    for k in 0..=pool.len() {
        'candidate: for combo in pool.iter().combinations(k) {
            let mut z: VertexSet = d.clone();
            z.extend(combo.into_iter().cloned());

            let Some(d_bar) = top_district(g, &z, d)? else {
                continue 'candidate;
            };
            let Some(sigma) = fixing::find_s_fixing_sequence(g, &z, c, Some(&d_bar))? else {
                continue 'candidate;
            };
            let prefix: Vec<VertexId> = sigma
                .iter()
                .filter(|v| !d_bar.contains(*v))
                .cloned()
                .collect();
            let (g1, kernel_k) = fixing::s_fix_sequence(g, base, &prefix, c, &c_values)?;

            // Re-assemble the joint of D̄ from Markov-blanket
            // conditionals, each conditioned only on earlier members.
            let outcomes_k: VertexSet = input
                .outcomes
                .iter()
                .filter(|v| !prefix.contains(*v))
                .cloned()
                .collect();
            let topo: Vec<VertexId> = g1
                .topological_order()
                .into_iter()
                .filter(|v| d_bar.contains(v))
                .collect();
            let mut factors = Vec::new();
            for (i, v) in topo.iter().enumerate() {
                let later: VertexSet = topo[i + 1..].iter().cloned().collect();
                let mb = g1.markov_blanket(v)?;
                let cond: VertexSet = mb
                    .intersection(&outcomes_k)
                    .filter(|u| !later.contains(*u))
                    .cloned()
                    .collect();
                let sum_out: VertexSet = outcomes_k
                    .iter()
                    .filter(|u| *u != v && !cond.contains(*u))
                    .cloned()
                    .collect();
                let mut f = kernel_k.clone();
                if !sum_out.is_empty() {
                    f = kernel_algebra::marginalize(f, sum_out)?;
                }
                if !cond.is_empty() {
                    f = kernel_algebra::condition(f, cond)?;
                }
                factors.push(f);
            }
            let q_dbar = if factors.len() == 1 {
                factors.into_iter().next().expect("nonempty district")
            } else {
                kernel_algebra::product(factors)?
            };

            // Fix the rest of the top district down to D.
            let rest: VertexSet = d_bar.difference(d).cloned().collect();
            let (kernel, suffix) = if rest.is_empty() {
                (q_dbar, Vec::new())
            } else {
                let cadmg = with_random(&g1, &d_bar)?;
                match fixing::fix_set(&cadmg, &rest)? {
                    FixSetOutcome::Reached { graph, sequence } => {
                        if graph.districts().len() != 1 {
                            continue 'candidate;
                        }
                        let (_, ker) = fixing::fix_sequence(&cadmg, &q_dbar, &sequence)?;
                        (ker, sequence)
                    }
                    FixSetOutcome::Unreachable { .. } => continue 'candidate,
                }
            };
            return Ok(Some(SelectionFactor {
                kernel,
                z_set: z,
                d_bar,
                prefix,
                suffix,
            }));
        }
    }
    Ok(None)
}

/// Checks the selection lemma's applicability clauses for a standalone
/// conditional input and computes the relevant margin.
fn check_applicable(
    g: &MixedGraph,
    input: &InputDist,
    world: &Swig,
    q: &Query,
) -> Result<VertexSet, IdentError> {
    let s_all: VertexSet = input.outcomes.union(&input.given).cloned().collect();
    for y in &q.y {
        if !s_all.contains(y) {
            return Err(IdentError::NotApplicable {
                clause: format!("query outcome {y} is not covered by the input"),
            });
        }
    }
    let a_keys = q.a.keys();
    for k in &a_keys {
        if !s_all.contains(k) && !input.do_.contains_key(k) {
            return Err(IdentError::NotApplicable {
                clause: format!(
                    "intervention target {k} is neither an input variable nor part \
                     of its generating intervention"
                ),
            });
        }
    }
    if !input.do_.is_consistent_with(&q.a) {
        return Err(IdentError::NotApplicable {
            clause: "the input's generating intervention disagrees with the query \
                     intervention"
                .into(),
        });
    }
    let wg = world.graph();
    let an = wg.ancestors(&q.y)?;
    let y_star: VertexSet = an
        .intersection(wg.random())
        .filter(|v| !a_keys.contains(*v))
        .cloned()
        .collect();
    // No conditioning variable may be downstream of the relevant margin.
    let de = wg.descendants(&y_star)?;
    if let Some(v) = de.intersection(&input.given).next() {
        return Err(IdentError::NotApplicable {
            clause: format!(
                "conditioning variable {v} is a descendant of the relevant margin"
            ),
        });
    }
    // The recorded conditioning level must agree with the query on the
    // intervened parents of the margin.
    let pa = g.parents(&y_star)?;
    let pa_a: VertexSet = pa.intersection(&a_keys).cloned().collect();
    if let Some(pinned) = &input.pinned_level {
        let shared = pinned.restrict(&pa_a);
        if !shared.is_consistent_with(&q.a) {
            let v = shared
                .keys()
                .iter()
                .find(|v| pinned.get(v) != q.a.get(v))
                .cloned()
                .expect("some pinned parent disagrees");
            return Err(IdentError::NotApplicable {
                clause: format!(
                    "the recorded conditioning level of {v} disagrees with the \
                     query intervention"
                ),
            });
        }
    }
    Ok(y_star)
}

/// Decides `p(Y(a))` from a single conditional input
/// `p({S \ C}(b) | C(b) = c)`.
///
/// The lemma's applicability clauses are checked first; violations are
/// reported as [`IdentError::NotApplicable`] naming the clause.  Each
/// district of `G(Y*(a))` is then recovered through
/// [`selection_district`]; exhaustion of the fixed-last supersets for any
/// district reports `Unknown` (the criterion is not known complete).
pub fn selection_id(
    g: &MixedGraph,
    input: &InputDist,
    q: &Query,
) -> Result<IdentResult, IdentError> {
    q.validate(g)?;
    let input = input.clone().with_id(0);
    input.validate(g)?;
    let keep: VertexSet = input.outcomes.union(&input.given).cloned().collect();
    let world = input_world(g, &input.do_, &keep)?;
    let y_star = check_applicable(g, &input, &world, q)?;
    let base = input.base_expr(g)?;
    let qw = query_world(g, &q.a, &y_star)?;

    let mut records = Vec::new();
    let mut exhausted = Vec::new();
    for d in qw.graph().districts() {
        match selection_district(&world, &input, &base, &d)? {
            Some(sf) => records.push(DistrictRecord {
                district: d,
                input: 0,
                input_desc: input.to_string(),
                sequence: sf.prefix,
                suffix: sf.suffix,
                z_set: Some(sf.z_set),
                d_bar: Some(sf.d_bar),
                kernel: sf.kernel,
            }),
            None => exhausted.push(d),
        }
    }
    if !exhausted.is_empty() {
        return Ok(IdentResult::unknown(exhausted));
    }
    let formula = assemble(g, q, &y_star, &records)?;
    Ok(IdentResult::identified(formula, y_star, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::result::Status;
    use graph_core::{examples, vset};
    use swig::Intervention;

    /// The enrollment conditional input composed over the x1 world.
    fn joint_conditional() -> InputDist {
        InputDist::conditional(
            vset(["J", "R1", "R2", "W1", "W2", "X2"]),
            Intervention::symbolic([("X1", "x1")]),
            vset(["C"]),
            Some(Intervention::symbolic([("C", "c")])),
        )
    }

    #[test]
    fn enrollment_sub_query_identifies_through_supersets() {
        // p(R1(x1, j)): intervening on J keeps the conditioning variable C
        // (a child of J) out of the margin's descendants, so the lemma
        // applies.  Neither district of the margin {R1, W1} is s-fixable
        // on its own — each needs the sibling R2 in its superset, fixed
        // before the top district.
        let g = examples::enrollment();
        let q = Query::new(
            vset(["R1"]),
            Intervention::symbolic([("J", "j"), ("X1", "x1")]),
        );
        let r = selection_id(&g, &joint_conditional(), &q).unwrap();
        assert_eq!(r.status, Status::Identified, "witness: {:?}", r.witness);
        assert_eq!(r.y_prime, Some(vset(["R1", "W1"])));
        let rec = r
            .provenance
            .iter()
            .find(|rec| rec.district == vset(["R1"]))
            .unwrap();
        assert_eq!(rec.z_set, Some(vset(["R1", "R2"])));
        assert_eq!(rec.d_bar, Some(vset(["R1"])));
        assert_eq!(rec.sequence, vec![graph_core::VertexId::from("R2")]);
        assert!(rec.suffix.is_empty());
        let rec_w = r
            .provenance
            .iter()
            .find(|rec| rec.district == vset(["W1"]))
            .unwrap();
        assert_eq!(rec_w.z_set, Some(vset(["R2", "W1"])));
        assert_eq!(rec_w.sequence, vec![graph_core::VertexId::from("R2")]);
    }

    #[test]
    fn margin_with_conditioned_descendant_is_rejected() {
        // For p({R1, R2}(x1)) the margin contains J, whose child C is the
        // conditioning variable: clause violation, not an identification
        // failure.
        let g = examples::enrollment();
        let q = Query::new(vset(["R1", "R2"]), Intervention::symbolic([("X1", "x1")]));
        let err = selection_id(&g, &joint_conditional(), &q).unwrap_err();
        match err {
            IdentError::NotApplicable { clause } => {
                assert!(clause.contains("descendant"), "clause: {clause}");
            }
            other => panic!("expected NotApplicable, got {other:?}"),
        }
    }

    #[test]
    fn confounded_conditioning_exhausts_to_unknown() {
        // The district {W2, X2} can never separate from C in the x1
        // world (W2 ↔ C), so its superset search is exhausted; the
        // machinery reports Unknown rather than claiming refutation.
        let g = examples::enrollment();
        let q = Query::new(
            vset(["R1", "R2"]),
            Intervention::symbolic([("J", "j"), ("X1", "x1")]),
        );
        let r = selection_id(&g, &joint_conditional(), &q).unwrap();
        assert_eq!(r.status, Status::Unknown);
        assert_eq!(r.witness, Some(vec![vset(["W2", "X2"])]));
    }

    #[test]
    fn pinned_level_must_agree_with_query_intervention() {
        // A → Y ← C, with p(Y | A, C) recorded only at C = c: asking for
        // p(Y(A = a, C = c_other)) contradicts the recorded slice.
        let g = MixedGraph::new(
            vset(["A", "C", "Y"]),
            vset([] as [&str; 0]),
            [("A".into(), "Y".into()), ("C".into(), "Y".into())],
            [] as [(graph_core::VertexId, graph_core::VertexId); 0],
        )
        .unwrap();
        let input = InputDist::conditional(
            vset(["Y"]),
            Intervention::empty(),
            vset(["A", "C"]),
            Some(Intervention::symbolic([("C", "c")])),
        );
        let q = Query::new(
            vset(["Y"]),
            Intervention::symbolic([("A", "a"), ("C", "c_other")]),
        );
        let err = selection_id(&g, &input, &q).unwrap_err();
        match err {
            IdentError::NotApplicable { clause } => {
                assert!(
                    clause.contains("recorded conditioning level"),
                    "clause: {clause}"
                );
            }
            other => panic!("expected NotApplicable, got {other:?}"),
        }
    }

    #[test]
    fn consistent_pin_identifies_the_conditional_adjustment() {
        // Same graph, but the query intervention agrees with the slice.
        let g = MixedGraph::new(
            vset(["A", "C", "Y"]),
            vset([] as [&str; 0]),
            [("A".into(), "Y".into()), ("C".into(), "Y".into())],
            [] as [(graph_core::VertexId, graph_core::VertexId); 0],
        )
        .unwrap();
        let input = InputDist::conditional(
            vset(["Y"]),
            Intervention::empty(),
            vset(["A", "C"]),
            Some(Intervention::symbolic([("C", "c")])),
        );
        let q = Query::new(
            vset(["Y"]),
            Intervention::symbolic([("A", "a"), ("C", "c")]),
        );
        let r = selection_id(&g, &input, &q).unwrap();
        assert_eq!(r.status, Status::Identified);
        assert_eq!(r.y_prime, Some(vset(["Y"])));
    }
}
