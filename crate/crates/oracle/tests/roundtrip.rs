//! Latent projection of the canonical hidden-variable DAG recovers the
//! source graph exactly.

use std::collections::BTreeMap;

use graph_core::examples;
use graph_core::MixedGraph;
use oracle::{canonical_latent_dag, gen, AdmgConfig};
use proptest::prelude::{any, prop_assert_eq, proptest, ProptestConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn round_trip(g: &MixedGraph) -> MixedGraph {
    let dag = canonical_latent_dag(g, &BTreeMap::new()).unwrap();
    swig::latent_project(&dag.as_graph(), dag.observed()).unwrap()
}

#[test]
fn fixture_graphs_round_trip() {
    for g in [
        examples::chain4(),
        examples::surrogate_pair(),
        examples::enrollment(),
        examples::backdoor(),
    ] {
        assert_eq!(round_trip(&g), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_graphs_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = AdmgConfig {
            min_vertices: 1,
            max_vertices: 8,
            directed_prob: 0.4,
            bidirected_prob: 0.3,
            // structural only: no joint is enumerated here
            max_bidirected: 28,
        };
        let g = gen::random_admg(&mut rng, &cfg).unwrap();
        prop_assert_eq!(round_trip(&g), g);
    }
}
