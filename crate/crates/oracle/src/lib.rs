//! Brute-force ground truth for finite causal models.
//!
//! This crate answers "what is the true distribution?" by enumeration, with
//! no identification machinery involved, so it can serve as an independent
//! check on symbolic formulas:
//!
//! 1. [`canonical_latent_dag`] expands a mixed graph into a DAG with one
//!    hidden root per bidirected edge.
//! 2. [`Parameterization`] attaches a conditional probability table to each
//!    vertex — randomly sampled (strictly positive) or hand-written.
//! 3. [`ground_truth`] computes any interventional/conditional distribution
//!    over observed vertices exactly, by multiplying out the factorization
//!    and summing over everything hidden.
//! 4. [`gen`](crate::gen) draws small random graphs for property tests.

mod error;
mod factor;
pub mod gen;
mod latent;
mod param;
mod truth;

pub use error::OracleError;
pub use factor::{ones, point_mass};
pub use gen::{random_admg, AdmgConfig};
pub use latent::{
    canonical_latent_dag, LatentDag, HIDDEN_CARDINALITY, HIDDEN_PREFIX,
    MAX_OBSERVED_CARDINALITY, MIN_OBSERVED_CARDINALITY,
};
pub use param::{derive_seed, Parameterization, DEFAULT_FLOOR};
pub use truth::{ground_truth, observational_joint, TargetSpec};
