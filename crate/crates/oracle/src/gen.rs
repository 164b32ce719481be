//! Random sparse mixed graphs for randomized testing.

use graph_core::{MixedGraph, VertexId, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::OracleError;

/// Vertex labels used by the generator, in order.
const LABELS: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

/// Shape of the random graphs produced by [`random_admg`].
#[derive(Debug, Clone, PartialEq)]
pub struct AdmgConfig {
    /// Fewest vertices to draw (inclusive).
    pub min_vertices: usize,
    /// Most vertices to draw (inclusive, at most 8).
    pub max_vertices: usize,
    /// Probability of each forward directed edge.
    pub directed_prob: f64,
    /// Probability of each bidirected edge, before capping.
    pub bidirected_prob: f64,
    /// Hard cap on bidirected edges (each one triples the hidden state
    /// space during enumeration).
    pub max_bidirected: usize,
}

impl Default for AdmgConfig {
    fn default() -> Self {
        AdmgConfig {
            min_vertices: 1,
            max_vertices: 6,
            directed_prob: 0.35,
            bidirected_prob: 0.3,
            max_bidirected: 5,
        }
    }
}

impl AdmgConfig {
    fn validate(&self) -> Result<(), OracleError> {
        if self.min_vertices == 0
            || self.min_vertices > self.max_vertices
            || self.max_vertices > LABELS.len()
        {
            return Err(OracleError::BadSpec(format!(
                "vertex range {}..={} outside 1..={}",
                self.min_vertices,
                self.max_vertices,
                LABELS.len()
            )));
        }
        for p in [self.directed_prob, self.bidirected_prob] {
            if !(0.0..=1.0).contains(&p) {
                return Err(OracleError::BadSpec(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// Draw a random acyclic mixed graph with all vertices random.
///
/// A random permutation of the chosen vertices serves as the causal order;
/// each forward pair independently gets a directed edge, each unordered
/// pair a bidirected edge (capped at `max_bidirected`, randomly thinned).
pub fn random_admg(rng: &mut impl Rng, cfg: &AdmgConfig) -> Result<MixedGraph, OracleError> {
    cfg.validate()?;
    let n = rng.gen_range(cfg.min_vertices..=cfg.max_vertices);
    let mut order: Vec<VertexId> = LABELS[..n].iter().map(|l| VertexId::new(*l)).collect();
    order.shuffle(rng);

    let mut directed = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(cfg.directed_prob) {
                directed.push((order[i].clone(), order[j].clone()));
            }
        }
    }

    let mut bidirected = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(cfg.bidirected_prob) {
                bidirected.push((order[i].clone(), order[j].clone()));
            }
        }
    }
    while bidirected.len() > cfg.max_bidirected {
        let drop = rng.gen_range(0..bidirected.len());
        bidirected.swap_remove(drop);
    }

    let vertices: VertexSet = order.into_iter().collect();
    Ok(MixedGraph::new(vertices, VertexSet::new(), directed, bidirected)
        .expect("forward edges over a permutation are acyclic"))
}
