//! Small named example graphs used throughout the workspace's tests, docs,
//! and the `examples/` fixture files.

use crate::graph::MixedGraph;
use crate::vertex::{vset, VertexId};

fn build(
    random: &[&str],
    directed: &[(&str, &str)],
    bidirected: &[(&str, &str)],
) -> MixedGraph {
    MixedGraph::new(
        vset(random.iter().copied()),
        vset([] as [&str; 0]),
        directed
            .iter()
            .map(|(t, h)| (VertexId::from(*t), VertexId::from(*h))),
        bidirected
            .iter()
            .map(|(a, b)| (VertexId::from(*a), VertexId::from(*b))),
    )
    .expect("example graphs are valid")
}

/// Two confounded treatments `X1`, `X2` acting on an outcome `Y` through
/// mediators `W` and `U`:
///
/// ```text
/// X1 → W → Y ← U ← X2,   X1 ↔ X2, X1 ↔ W, U ↔ Y, X2 ↔ Y
/// ```
///
/// `p(Y(x1, x2))` is not identifiable here from observational data alone but
/// becomes identifiable from single-treatment experiments, which makes this
/// the workhorse example for the surrogate-experiment algorithms.
pub fn surrogate_pair() -> MixedGraph {
    build(
        &["U", "W", "X1", "X2", "Y"],
        &[("X1", "W"), ("W", "Y"), ("X2", "U"), ("U", "Y")],
        &[("X1", "X2"), ("X1", "W"), ("U", "Y"), ("X2", "Y")],
    )
}

/// The four-variable chain with one confounded skip:
///
/// ```text
/// A → B → C → D,  A → C,  B ↔ D
/// ```
///
/// Its fixing lattice is small enough to enumerate by hand (13 reachable
/// sets, 5 intrinsic) while still exhibiting a generalized (dormant)
/// independence, so it anchors the enumeration and kernel tests.
pub fn chain4() -> MixedGraph {
    build(
        &["A", "B", "C", "D"],
        &[("A", "B"), ("B", "C"), ("C", "D"), ("A", "C")],
        &[("B", "D")],
    )
}

/// An eight-variable study graph with an enrollment indicator:
///
/// ```text
/// X1 → W1 → R1,  X2 → W2 → R2,  J → W1,  J → C
/// X1 ↔ W1,  X2 ↔ W2,  W1 ↔ R2,  W2 ↔ C,  R1 ↔ R2
/// ```
///
/// `C` plays the role of a selection/enrollment flag: several realistic
/// input distributions are only available conditional on `C = c`, which is
/// exactly the situation the selection-aware algorithms handle.
pub fn enrollment() -> MixedGraph {
    build(
        &["C", "J", "R1", "R2", "W1", "W2", "X1", "X2"],
        &[
            ("X1", "W1"),
            ("X2", "W2"),
            ("W2", "R2"),
            ("W1", "R1"),
            ("J", "C"),
            ("J", "W1"),
        ],
        &[
            ("X1", "W1"),
            ("X2", "W2"),
            ("W1", "R2"),
            ("W2", "C"),
            ("R1", "R2"),
        ],
    )
}

/// The three-variable back-door graph `C → A → Y`, `C → Y`: the smallest
/// setting where `p(Y(a))` needs a covariate adjustment.
pub fn backdoor() -> MixedGraph {
    build(&["A", "C", "Y"], &[("C", "A"), ("A", "Y"), ("C", "Y")], &[])
}
