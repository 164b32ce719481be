//! Identification outcomes with machine-checkable provenance.

use graph_core::{VertexId, VertexSet};
use kernel_algebra::KernelExpr;
use serde::{Deserialize, Serialize};

/// Outcome of an identification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// A formula was derived; for the complete algorithms this is a proof
    /// of identifiability.
    Identified,
    /// A complete algorithm proved the query unidentifiable from the
    /// inputs; `witness` names the obstructing districts.
    NotIdentified,
    /// The search was exhausted without a derivation, but the algorithm is
    /// not complete for this input class, so no impossibility claim is
    /// made.
    Unknown,
}

/// How one district of the relevant margin was covered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistrictRecord {
    /// The district `D` of the margin world graph.
    pub district: VertexSet,
    /// Index of the input distribution the factor was derived from.
    pub input: usize,
    /// Human-readable description of that input.
    pub input_desc: String,
    /// The fixing sequence applied to the input's world graph (for
    /// conditional inputs, the s-fixing prefix outside the top district).
    pub sequence: Vec<VertexId>,
    /// For conditional inputs: the final plain-fixing order inside the top
    /// district (empty otherwise).
    pub suffix: Vec<VertexId>,
    /// For conditional inputs: the fixed-last superset `Z` chosen for the
    /// district.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_set: Option<VertexSet>,
    /// For conditional inputs: the top district `D̄ ⊆ Z` fixed last.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_bar: Option<VertexSet>,
    /// The unsimplified factor; replaying `sequence` (and the conditional
    /// machinery where applicable) on the input's base expression
    /// reproduces it exactly.
    pub kernel: KernelExpr,
}

/// A margin candidate that was tried and rejected during the search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttemptRecord {
    /// The candidate relevant margin `Y′`.
    pub y_prime: VertexSet,
    /// The first district of `G(Y′(a))` with no admissible input.
    pub failed_district: VertexSet,
    /// Why the candidate was rejected.
    pub reason: String,
}

/// Result of an identification run: status, the identifying functional when
/// one exists, and enough provenance to replay the derivation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentResult {
    pub status: Status,
    /// The simplified identifying functional (present iff identified).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<KernelExpr>,
    /// The margin `Y′` whose districts the formula factorizes over.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_prime: Option<VertexSet>,
    /// One record per district of `G(Y′(a))`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<DistrictRecord>,
    /// Margin candidates tried and rejected before the outcome.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attempted: Vec<AttemptRecord>,
    /// On `NotIdentified` (and exhausted searches): districts with no
    /// admissible input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<VertexSet>>,
    /// Derivation log of the chain-rule closure (conditional inputs only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub closure_log: Vec<String>,
}

impl IdentResult {
    pub(crate) fn identified(
        formula: KernelExpr,
        y_prime: VertexSet,
        provenance: Vec<DistrictRecord>,
    ) -> Self {
        IdentResult {
            status: Status::Identified,
            formula: Some(formula),
            y_prime: Some(y_prime),
            provenance,
            attempted: Vec::new(),
            witness: None,
            closure_log: Vec::new(),
        }
    }

    pub(crate) fn not_identified(witness: Vec<VertexSet>) -> Self {
        IdentResult {
            status: Status::NotIdentified,
            formula: None,
            y_prime: None,
            provenance: Vec::new(),
            attempted: Vec::new(),
            witness: Some(witness),
            closure_log: Vec::new(),
        }
    }

    pub(crate) fn unknown(witness: Vec<VertexSet>) -> Self {
        IdentResult {
            status: Status::Unknown,
            formula: None,
            y_prime: None,
            provenance: Vec::new(),
            attempted: Vec::new(),
            witness: if witness.is_empty() { None } else { Some(witness) },
            closure_log: Vec::new(),
        }
    }
}
