//! Graphical m-separation implies numeric conditional independence in every
//! compatible model.  (The converse needs faithfulness and is not tested.)

use graph_core::{m_separated, VertexId, VertexSet};
use kernel_algebra::TabularDist;
use oracle::{
    canonical_latent_dag, derive_seed, gen, ground_truth, AdmgConfig, Parameterization,
    TargetSpec,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swig::Intervention;
use std::collections::BTreeMap;

const TOL_SOUND: f64 = 1e-9;

#[test]
fn separated_vertices_are_conditionally_independent() {
    let cfg = AdmgConfig {
        min_vertices: 3,
        max_vertices: 5,
        directed_prob: 0.3,
        bidirected_prob: 0.25,
        max_bidirected: 3,
    };
    let mut separated_checked = 0usize;
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen::random_admg(&mut rng, &cfg).unwrap();
        let mut vertices: Vec<VertexId> = g.random().iter().cloned().collect();
        vertices.shuffle(&mut rng);
        if vertices.len() < 2 {
            continue;
        }
        let x: VertexSet = [vertices[0].clone()].into_iter().collect();
        let y: VertexSet = [vertices[1].clone()].into_iter().collect();
        let z: VertexSet = vertices[2..]
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect();
        if !m_separated(&g, &x, &y, &z).unwrap() {
            continue;
        }
        separated_checked += 1;

        let dag = canonical_latent_dag(&g, &BTreeMap::new()).unwrap();
        let p = Parameterization::sample(&dag, derive_seed(seed, 7));
        let xy: VertexSet = x.union(&y).cloned().collect();
        let t_xy = ground_truth(
            &dag,
            &p,
            &TargetSpec::new(xy, Intervention::empty(), z.clone(), Intervention::empty())
                .unwrap(),
        )
        .unwrap();
        let t_x = ground_truth(
            &dag,
            &p,
            &TargetSpec::new(
                x.clone(),
                Intervention::empty(),
                z.clone(),
                Intervention::empty(),
            )
            .unwrap(),
        )
        .unwrap();
        let t_y = ground_truth(
            &dag,
            &p,
            &TargetSpec::new(
                y.clone(),
                Intervention::empty(),
                z.clone(),
                Intervention::empty(),
            )
            .unwrap(),
        )
        .unwrap();
        let product = TabularDist::multiply(&t_x, &t_y).unwrap();
        let dev = TabularDist::max_broadcast_deviation(&t_xy, &product).unwrap();
        assert!(
            dev <= TOL_SOUND,
            "seed {seed}: {x:?} vs {y:?} given {z:?} separated but dependent (dev {dev})"
        );
    }
    assert!(
        separated_checked >= 25,
        "only {separated_checked} separated triples found; generator too dense"
    );
}
