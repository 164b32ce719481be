//! Identification from ancestral interventional margins.

use crate::error::IdentError;
use crate::gid::prepare;
use crate::input::{number_inputs, InputDist, Query};
use crate::result::{DistrictRecord, IdentResult};
use crate::world::{assemble, district_kernel, query_world};
use graph_core::{MixedGraph, VertexId};

/// If the input's outcome margin is not ancestral in its full world graph,
/// returns a random ancestor that is missing from it.
pub(crate) fn ancestral_violation(
    g: &MixedGraph,
    input: &InputDist,
) -> Result<Option<VertexId>, IdentError> {
    let world = swig::split(g, &input.do_)?;
    let an = world.graph().ancestors(&input.outcomes)?;
    Ok(an
        .intersection(world.graph().random())
        .find(|v| !input.outcomes.contains(*v))
        .cloned())
}

/// Decides `p(Y(a))` from unconditional interventional margins that are
/// each ancestral in their own world graph.
///
/// Ancestral margins preserve the strict parents of every kept vertex, so
/// district matching needs only the intrinsic-set membership test on each
/// input's marginal world graph.  The decision is complete for this input
/// class.
pub fn a_id(g: &MixedGraph, z: &[InputDist], q: &Query) -> Result<IdentResult, IdentError> {
    q.validate(g)?;
    let inputs = number_inputs(g, z)?;
    if inputs.is_empty() {
        return Err(IdentError::NoInputs);
    }
    for d in &inputs {
        if !d.is_unconditional() {
            return Err(IdentError::ConditionalInput { input: d.id });
        }
        if let Some(ancestor) = ancestral_violation(g, d)? {
            return Err(IdentError::NotAncestral {
                input: d.id,
                ancestor,
            });
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::result::Status;
    use graph_core::{examples, vset};
    use swig::Intervention;

    fn query() -> Query {
        Query::new(
            vset(["Y"]),
            Intervention::symbolic([("X1", "x1"), ("X2", "x2")]),
        )
    }

    #[test]
    fn surrogate_ancestral_margins_identify() {
        let g = examples::surrogate_pair();
        // p(W(x1)) is an ancestral margin of the x1 world; the x2-world
        // input is the full joint (trivially ancestral).
        let z = vec![
            InputDist::marginal(vset(["W"]), Intervention::symbolic([("X1", "x1")])),
            InputDist::marginal(
                vset(["U", "W", "X1", "Y"]),
                Intervention::symbolic([("X2", "x2")]),
            ),
        ];
        let r = a_id(&g, &z, &query()).unwrap();
        assert_eq!(r.status, Status::Identified);
        let w_rec = r
            .provenance
            .iter()
            .find(|rec| rec.district == vset(["W"]))
            .unwrap();
        assert_eq!(w_rec.input, 0);
        // No fixing needed for {W} from p(W(x1)).
        assert!(w_rec.sequence.is_empty());
        let uy_rec = r
            .provenance
            .iter()
            .find(|rec| rec.district == vset(["U", "Y"]))
            .unwrap();
        assert_eq!(uy_rec.input, 1);
    }

    #[test]
    fn non_ancestral_margin_is_rejected_naming_the_ancestor() {
        let g = examples::surrogate_pair();
        // {Y, W} misses U, a random ancestor of Y in the x2 world.
        let z = vec![InputDist::marginal(
            vset(["W", "Y"]),
            Intervention::symbolic([("X2", "x2")]),
        )];
        assert_eq!(
            a_id(&g, &z, &query()).unwrap_err(),
            IdentError::NotAncestral {
                input: 0,
                ancestor: "U".into()
            }
        );
    }

    #[test]
    fn incomplete_collection_reports_witness() {
        let g = examples::surrogate_pair();
        let z = vec![InputDist::marginal(
            vset(["W"]),
            Intervention::symbolic([("X1", "x1")]),
        )];
        let r = a_id(&g, &z, &query()).unwrap();
        assert_eq!(r.status, Status::NotIdentified);
        assert_eq!(r.witness, Some(vec![vset(["U", "Y"])]));
    }
}
