//! Random and hand-built conditional probability tables for a latent DAG.

use std::collections::BTreeMap;

use graph_core::VertexId;
use kernel_algebra::TabularDist;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::OracleError;
use crate::latent::LatentDag;

/// Default lower bound mixed into every conditional probability, keeping
/// sampled models strictly positive.
pub const DEFAULT_FLOOR: f64 = 0.01;

/// Derive a stream seed from a master seed and an index (splitmix64 step).
/// Used to give each verification trial its own deterministic stream.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One conditional probability table per vertex of a latent DAG.
///
/// The table for `V` has columns `[sorted parents of V..., V]`; each slice
/// along the final axis is a distribution over the levels of `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameterization {
    seed: Option<u64>,
    tables: BTreeMap<VertexId, TabularDist>,
}

impl Parameterization {
    /// Sample a strictly positive parameterization with the default floor.
    pub fn sample(dag: &LatentDag, seed: u64) -> Self {
        Self::sample_with_floor(dag, seed, DEFAULT_FLOOR)
            .expect("default floor is valid for all supported cardinalities")
    }

    /// Sample a parameterization whose conditional probabilities are each at
    /// least `floor`.  Rows are drawn uniformly from the simplex and then
    /// mixed toward uniform: `p' = floor + (1 - k*floor) * p`.
    pub fn sample_with_floor(
        dag: &LatentDag,
        seed: u64,
        floor: f64,
    ) -> Result<Self, OracleError> {
        if !(0.0..0.25).contains(&floor) {
            return Err(OracleError::BadSpec(format!(
                "probability floor {floor} outside [0, 0.25)"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tables = BTreeMap::new();
        for (v, &k) in dag.cards() {
            let vars = cpt_columns(dag, v)?;
            let rows: usize = vars[..vars.len() - 1].iter().map(|(_, c)| c).product();
            let mut probs = Vec::with_capacity(rows * k);
            for _ in 0..rows {
                // -ln(U) draws are Exp(1); normalizing gives Dirichlet(1,..,1).
                let mut row: Vec<f64> = (0..k)
                    .map(|_| -rng.gen::<f64>().max(1e-300).ln())
                    .collect();
                let total: f64 = row.iter().sum();
                for p in &mut row {
                    *p = floor + (1.0 - k as f64 * floor) * (*p / total);
                }
                probs.extend(row);
            }
            let table = TabularDist::new(vars, probs)?;
            tables.insert(v.clone(), table);
        }
        Ok(Parameterization {
            seed: Some(seed),
            tables,
        })
    }

    /// Build a parameterization from hand-written tables.  Each table must
    /// cover exactly `[sorted parents of V..., V]` with the DAG's
    /// cardinalities, and every conditional row must sum to one.
    pub fn from_tables(
        dag: &LatentDag,
        tables: BTreeMap<VertexId, TabularDist>,
    ) -> Result<Self, OracleError> {
        for v in tables.keys() {
            // errors if v is not a vertex of the DAG
            dag.card(v)?;
        }
        for (v, _) in dag.cards() {
            let table = tables.get(v).ok_or_else(|| {
                OracleError::BadSpec(format!("missing conditional table for vertex '{v}'"))
            })?;
            let want = cpt_columns(dag, v)?;
            if table.vars() != want.as_slice() {
                let got: Vec<String> = table
                    .vars()
                    .iter()
                    .map(|(u, c)| format!("{u}:{c}"))
                    .collect();
                let want: Vec<String> =
                    want.iter().map(|(u, c)| format!("{u}:{c}")).collect();
                return Err(OracleError::BadSpec(format!(
                    "table for '{v}' has columns [{}], expected [{}]",
                    got.join(", "),
                    want.join(", ")
                )));
            }
            let outcome = [v.clone()].into_iter().collect();
            let dev = table.max_normalization_deviation(&outcome)?;
            if dev > 1e-9 {
                return Err(OracleError::BadSpec(format!(
                    "table for '{v}' has a conditional row summing to 1 ± {dev:.3e}"
                )));
            }
        }
        Ok(Parameterization { seed: None, tables })
    }

    /// The seed this parameterization was sampled from, if any.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// The conditional table for `v`.
    pub fn table(&self, v: &VertexId) -> Result<&TabularDist, OracleError> {
        self.tables.get(v).ok_or_else(|| {
            OracleError::BadSpec(format!("no conditional table for vertex '{v}'"))
        })
    }
}

/// Column layout of the conditional table for `v`: sorted parents, then `v`.
pub(crate) fn cpt_columns(
    dag: &LatentDag,
    v: &VertexId,
) -> Result<Vec<(VertexId, usize)>, OracleError> {
    let mut vars: Vec<(VertexId, usize)> = Vec::new();
    for p in dag.parents_of(v)? {
        vars.push((p.clone(), dag.card(&p)?));
    }
    vars.push((v.clone(), dag.card(v)?));
    Ok(vars)
}
