//! Frozen checks on hand-built conditional graphs (worlds derived from the
//! surrogate-pair example; the derivations are re-done independently by the
//! `swig` crate's tests).

use graph_core::{m_separated, vset, MixedGraph};

/// The surrogate-pair world where `X2` is intervened on and projected out:
/// random `{X1, W, U, Y}`, fixed `{x2}`, edges `X1→W, W→Y, U→Y, x2→U`,
/// `X1↔W, U↔Y`.
fn world_x2() -> MixedGraph {
    MixedGraph::new(
        vset(["U", "W", "X1", "Y"]),
        vset(["x2"]),
        [
            ("X1".into(), "W".into()),
            ("W".into(), "Y".into()),
            ("U".into(), "Y".into()),
            ("x2".into(), "U".into()),
        ],
        [("X1".into(), "W".into()), ("U".into(), "Y".into())],
    )
    .unwrap()
}

#[test]
fn outcome_screened_from_first_treatment() {
    // Y ⊥ X1 | {U, W} in the x2 world.
    let g = world_x2();
    assert!(m_separated(&g, &vset(["Y"]), &vset(["X1"]), &vset(["U", "W"])).unwrap());
    // Marginally they stay connected through the mediator route X1→W→Y.
    assert!(!m_separated(&g, &vset(["Y"]), &vset(["X1"]), &vset([] as [&str; 0])).unwrap());
}

#[test]
fn fixed_first_topological_order() {
    let g = world_x2();
    let order = g.topological_order();
    assert_eq!(order[0].as_str(), "x2");
    let pos = |s: &str| order.iter().position(|v| v.as_str() == s).unwrap();
    assert!(pos("X1") < pos("W"));
    assert!(pos("W") < pos("Y"));
    assert!(pos("U") < pos("Y"));
}

#[test]
fn marginal_world_is_ancestral() {
    // The marginal world graph on {W} under an x1 intervention: x1 → W.
    let g = MixedGraph::new(
        vset(["W"]),
        vset(["x1"]),
        [("x1".into(), "W".into())],
        [],
    )
    .unwrap();
    assert!(g.is_ancestral(&vset(["W"])).unwrap());
}
