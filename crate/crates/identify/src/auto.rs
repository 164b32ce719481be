//! Automatic selection of the least general applicable criterion.

use crate::aid::{a_id, ancestral_violation};
use crate::classic::id_classic;
use crate::eid::e_id;
use crate::error::IdentError;
use crate::gid::g_id;
use crate::input::{InputDist, Query};
use crate::mid::m_id;
use crate::result::IdentResult;
use graph_core::MixedGraph;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The identification criteria, from least to most general.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Observational joint only.
    Id,
    /// Full interventional joints.
    Gid,
    /// Ancestral interventional margins.
    Aid,
    /// Arbitrary interventional margins.
    Mid,
    /// Conditional inputs admitted.
    Eid,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algorithm::Id => "id",
            Algorithm::Gid => "gid",
            Algorithm::Aid => "aid",
            Algorithm::Mid => "mid",
            Algorithm::Eid => "eid",
        };
        f.write_str(s)
    }
}

/// Picks the least general criterion whose input contract the collection
/// satisfies.
pub fn choose_algorithm(g: &MixedGraph, z: &[InputDist]) -> Result<Algorithm, IdentError> {
    if z.is_empty() {
        return Err(IdentError::NoInputs);
    }
    if z.len() == 1 && z[0].do_.is_empty() && z[0].is_full_joint(g) {
        return Ok(Algorithm::Id);
    }
    if z.iter().all(|d| d.is_full_joint(g)) {
        return Ok(Algorithm::Gid);
    }
    if !z.iter().all(|d| d.is_unconditional()) {
        return Ok(Algorithm::Eid);
    }
    for d in z {
        if ancestral_violation(g, d)?.is_some() {
            return Ok(Algorithm::Mid);
        }
    }
    Ok(Algorithm::Aid)
}

/// Runs [`choose_algorithm`] and dispatches to the chosen criterion.
pub fn identify_auto(
    g: &MixedGraph,
    z: &[InputDist],
    q: &Query,
) -> Result<(Algorithm, IdentResult), IdentError> {
    let alg = choose_algorithm(g, z)?;
    let res = match alg {
        Algorithm::Id => id_classic(g, q)?,
        Algorithm::Gid => g_id(g, z, q)?,
        Algorithm::Aid => a_id(g, z, q)?,
        Algorithm::Mid => m_id(g, z, q)?,
        Algorithm::Eid => e_id(g, z, q)?,
    };
    Ok((alg, res))
}
