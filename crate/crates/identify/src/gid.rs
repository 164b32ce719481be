//! Identification from full joint interventional distributions.

use crate::error::IdentError;
use crate::input::{number_inputs, InputDist, Query};
use crate::result::{DistrictRecord, IdentResult};
use crate::world::{assemble, district_kernel, input_world, query_world};
use graph_core::{MixedGraph, VertexSet};
use kernel_algebra::KernelExpr;
use swig::Swig;

pub(crate) struct Prepared {
    pub dist: InputDist,
    pub world: Swig,
    pub expr: KernelExpr,
}

pub(crate) fn prepare(g: &MixedGraph, inputs: &[InputDist]) -> Result<Vec<Prepared>, IdentError> {
    inputs
        .iter()
        .map(|d| {
            let keep: VertexSet = d.outcomes.union(&d.given).cloned().collect();
            Ok(Prepared {
                world: input_world(g, &d.do_, &keep)?,
                expr: d.base_expr(g)?,
                dist: d.clone(),
            })
        })
        .collect()
}

/// Decides `p(Y(a))` from a collection of full joint interventional
/// distributions `p({V \ B_i}(b_i))`.
///
/// Every input must be unconditional and cover all non-intervened
/// vertices.  Each district of `G(Y*(a))` is matched against the inputs in
/// index order; the first input whose world graph makes the district
/// intrinsic supplies its kernel.  This decision is complete for this
/// input class: an uncovered district proves non-identifiability.
pub fn g_id(g: &MixedGraph, z: &[InputDist], q: &Query) -> Result<IdentResult, IdentError> {
    q.validate(g)?;
    let inputs = number_inputs(g, z)?;
    if inputs.is_empty() {
        return Err(IdentError::NoInputs);
    }
    for d in &inputs {
        if !d.is_unconditional() {
            return Err(IdentError::ConditionalInput { input: d.id });
        }
        if !d.is_full_joint(g) {
            return Err(IdentError::NotFullJoint { input: d.id });
        }
    }
    let y_star = swig::ystar(g, &q.y, &q.a)?;
    let qw = query_world(g, &q.a, &y_star)?;
    let prepared = prepare(g, &inputs)?;

    let mut records = Vec::new();
    let mut missing = Vec::new();
    for d in qw.graph().districts() {
        let mut hit = None;
        for p in &prepared {
            if !p.dist.consistent_with(&q.a) {
                continue;
            }
            if !d.is_subset(&p.dist.outcomes) {
                continue;
            }
            if let Some(rep) = district_kernel(p.world.graph(), &p.expr, &d)? {
                hit = Some(DistrictRecord {
                    district: d.clone(),
                    input: p.dist.id,
                    input_desc: p.dist.to_string(),
                    sequence: rep.sequence,
                    suffix: Vec::new(),
                    z_set: None,
                    d_bar: None,
                    kernel: rep.kernel,
                });
                break;
            }
        }
        match hit {
            Some(rec) => records.push(rec),
            None => missing.push(d),
        }
    }
    if !missing.is_empty() {
        return Ok(IdentResult::not_identified(missing));
    }
    let formula = assemble(g, q, &y_star, &records)?;
    Ok(IdentResult::identified(formula, y_star, records))
}
