//! Golden fixing facts on the bundled example graphs, exercised through the
//! world-graph pipeline: the surrogate-pair marginal world and the
//! enrollment study's x1-world.

use graph_core::examples::{enrollment, surrogate_pair};
use graph_core::{vset, VertexId, VertexSet};
use kernel_algebra::{condition, marginalize, ratio, DistRef, KernelExpr};
use swig::{marginal_swig, Intervention};

use fixing::{
    find_s_fixing_sequence, fix_graph, fix_kernel, fix_set, is_fixable, is_s_fixable,
    s_fix_graph, s_fix_kernel, FixSetOutcome,
};

fn vid(s: &str) -> VertexId {
    VertexId::new(s)
}

/// The marginal world of the surrogate pair under a symbolic intervention on
/// X2, projected onto the remaining random vertices.
fn surrogate_x2_world() -> graph_core::MixedGraph {
    let g = surrogate_pair();
    let a = Intervention::symbolic([("X2", "x2")]);
    let keep = vset(["U", "W", "X1", "Y"]);
    marginal_swig(&g, &a, &keep).unwrap().graph().clone()
}

/// The marginal world of the enrollment graph under a symbolic intervention
/// on X1, projected onto all other vertices.
fn enrollment_x1_world() -> graph_core::MixedGraph {
    let g = enrollment();
    let a = Intervention::symbolic([("X1", "x1")]);
    let keep = vset(["C", "J", "R1", "R2", "W1", "W2", "X2"]);
    marginal_swig(&g, &a, &keep).unwrap().graph().clone()
}

#[test]
fn surrogate_world_w_is_fixable() {
    let g2 = surrogate_x2_world();
    assert!(is_fixable(&g2, &vid("W")).unwrap());
}

#[test]
fn surrogate_world_fixing_w_removes_its_arrowheads() {
    let g2 = surrogate_x2_world();
    let fixed_w = fix_graph(&g2, &vid("W")).unwrap();
    assert!(fixed_w.is_fixed(&vid("W")));
    // X1 → W and W ↔ X1 are gone; W → Y survives.
    let directed: Vec<_> = fixed_w.directed_edges().cloned().collect();
    assert!(directed.contains(&(vid("W"), vid("Y"))));
    assert!(!directed.contains(&(vid("X1"), vid("W"))));
    let bidirected: Vec<_> = fixed_w.bidirected_edges().cloned().collect();
    assert_eq!(bidirected, vec![(vid("U"), vid("Y"))]);
}

#[test]
fn surrogate_world_reaches_uy_by_fixing_w_then_x1() {
    let g2 = surrogate_x2_world();
    match fix_set(&g2, &vset(["W", "X1"])).unwrap() {
        FixSetOutcome::Reached { graph, sequence } => {
            assert_eq!(sequence, vec![vid("W"), vid("X1")]);
            assert_eq!(graph.random(), &vset(["U", "Y"]));
            assert_eq!(graph.districts(), vec![vset(["U", "Y"])]);
        }
        other => panic!("expected Reached, got {other:?}"),
    }
}

#[test]
fn surrogate_world_kernel_fix_divides_by_marginal_given_context() {
    // After fixing W, the kernel over {U, X1, Y} given W is divided by its
    // marginal onto X1 — the blanket of X1 holds no remaining outcome, so
    // the denominator is q(X1 | W) with W conditioning through the context.
    let g2 = surrogate_x2_world();
    let g2w = fix_graph(&g2, &vid("W")).unwrap();
    let e = KernelExpr::base(
        DistRef::new(
            0,
            vset(["U", "X1", "Y"]),
            Intervention::symbolic([("X2", "x2")]),
            vset(["W"]),
            None,
            Default::default(),
        )
        .unwrap(),
    );
    let got = fix_kernel(&e, &vid("X1"), &g2w).unwrap();
    let want = ratio(e.clone(), marginalize(e.clone(), vset(["U", "Y"])).unwrap()).unwrap();
    assert_eq!(got, want);
    let shape = got.shape().unwrap();
    assert_eq!(shape.outcomes, vset(["U", "Y"]));
    assert_eq!(shape.observed, vset(["W", "X1"]));
    assert_eq!(shape.world, vset(["X2"]));
}

#[test]
fn enrollment_x1_world_structure() {
    let w = enrollment_x1_world();
    assert_eq!(w.random(), &vset(["C", "J", "R1", "R2", "W1", "W2", "X2"]));
    assert_eq!(w.fixed(), &vset(["x1"]));
}

#[test]
fn enrollment_x1_world_s_fixability_under_enrollment_conditioning() {
    let w = enrollment_x1_world();
    let c = vset(["C"]);
    // W2's descendants avoid C and its district meets them only in itself.
    assert!(is_s_fixable(&w, &vid("W2"), &c).unwrap());
    // X2 shares its district with its descendant W2 until W2 is fixed.
    assert!(!is_s_fixable(&w, &vid("X2"), &c).unwrap());
    let after_w2 = s_fix_graph(&w, &vid("W2"), &c).unwrap();
    assert!(is_s_fixable(&after_w2, &vid("X2"), &c).unwrap());
    // J causes the conditioned vertex C, so it can never be s-fixed.
    assert!(!is_s_fixable(&w, &vid("J"), &c).unwrap());
}

#[test]
fn enrollment_x1_world_constrained_sequence() {
    let w = enrollment_x1_world();
    let targets = vset(["R1", "R2", "W1", "W2", "X2"]);
    let c = vset(["C"]);
    let suffix = vset(["R1", "R2", "W1"]);
    let seq = find_s_fixing_sequence(&w, &targets, &c, Some(&suffix))
        .unwrap()
        .expect("the constrained sequence exists");
    assert_eq!(
        seq,
        vec![vid("W2"), vid("X2"), vid("R2"), vid("R1"), vid("W1")]
    );
}

#[test]
fn enrollment_x1_world_conditioned_descendant_is_unreachable() {
    let w = enrollment_x1_world();
    assert_eq!(
        find_s_fixing_sequence(&w, &vset(["J"]), &vset(["C"]), None).unwrap(),
        None
    );
}

#[test]
fn enrollment_x1_world_s_fix_kernel_conditions_on_blanket_outside_c() {
    // s-fixing W2 from the conditional joint over the x1-world divides by
    // q(W2 | J, X2): the blanket {C, J, X2} minus the conditioned C, with
    // C = c carried by the pinned context.
    let w = enrollment_x1_world();
    let c = vset(["C"]);
    let c_values = Intervention::symbolic([("C", "c")]);
    let e = KernelExpr::base(
        DistRef::new(
            1,
            vset(["J", "R1", "R2", "W1", "W2", "X2"]),
            Intervention::symbolic([("X1", "x1")]),
            vset(["C"]),
            Some(c_values.clone()),
            Default::default(),
        )
        .unwrap(),
    );
    let got = s_fix_kernel(&e, &vid("W2"), &c, &c_values, &w).unwrap();
    let want = ratio(
        e.clone(),
        condition(
            marginalize(e.clone(), vset(["R1", "R2", "W1"])).unwrap(),
            vset(["J", "X2"]),
        )
        .unwrap(),
    )
    .unwrap();
    assert_eq!(got, want);
    // The quotient is still a kernel over everything but W2; only the
    // denominator's outcome moves into the observed context.
    let shape = got.shape().unwrap();
    assert_eq!(shape.outcomes, vset(["J", "R1", "R2", "W1", "X2"]));
    assert_eq!(shape.observed, vset(["W2"]));
    assert_eq!(shape.world, vset(["X1"]));
}

#[test]
fn enrollment_x1_world_blanket_matches_hand_computation() {
    let w = enrollment_x1_world();
    assert_eq!(w.markov_blanket(&vid("W2")).unwrap(), vset(["C", "J", "X2"]));
    let c: VertexSet = vset(["C"]);
    let mb_outside_c: VertexSet = w
        .markov_blanket(&vid("W2"))
        .unwrap()
        .difference(&c)
        .cloned()
        .collect();
    assert_eq!(mb_outside_c, vset(["J", "X2"]));
}
