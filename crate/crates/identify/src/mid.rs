//! Identification from arbitrary unconditional interventional margins.

use crate::error::IdentError;
use crate::gid::prepare;
use crate::input::{number_inputs, Query};
use crate::input::InputDist;
use crate::result::{AttemptRecord, DistrictRecord, IdentResult};
use crate::world::{
    assemble, district_kernel, margin_candidates, query_world, strict_parent_bases,
    MARGIN_SEARCH_LIMIT,
};
use graph_core::MixedGraph;

/// Decides `p(Y(a))` from unconditional interventional margins with no
/// ancestrality requirement.
///
/// Arbitrary margins can lose or gain strict parents under latent
/// projection, so a district is only taken from an input whose world graph
/// agrees with the query world `G(Y′(a))` on the district's strict parent
/// set (compared through base labels).  Candidate margins `Y ⊆ Y′ ⊆ Y*`
/// are searched in decreasing cardinality (lexicographic within a
/// cardinality); the first margin whose districts are all covered wins.
/// The search is exhaustive but the criterion is not known to be complete,
/// so exhaustion reports `Unknown`, never a proof of non-identifiability.
pub fn m_id(g: &MixedGraph, z: &[InputDist], q: &Query) -> Result<IdentResult, IdentError> {
    q.validate(g)?;
    let inputs = number_inputs(g, z)?;
    if inputs.is_empty() {
        return Err(IdentError::NoInputs);
    }
    for d in &inputs {
        if !d.is_unconditional() {
            return Err(IdentError::ConditionalInput { input: d.id });
        }
    }
    let y_star = swig::ystar(g, &q.y, &q.a)?;
    let extras = y_star.difference(&q.y).count();
    if extras > MARGIN_SEARCH_LIMIT {
        return Err(IdentError::SearchSpaceTooLarge {
            size: extras,
            limit: MARGIN_SEARCH_LIMIT,
        });
    }
    let prepared = prepare(g, &inputs)?;

    let mut attempts = Vec::new();
    for y_prime in margin_candidates(&q.y, &y_star) {
        let qw = query_world(g, &q.a, &y_prime)?;
        let mut records = Vec::new();
        let mut failed = None;
        for d in qw.graph().districts() {
            let qpa = strict_parent_bases(&qw, &d)?;
            let mut hit = None;
            for p in &prepared {
                if !p.dist.consistent_with(&q.a) {
                    continue;
                }
                if !d.is_subset(&p.dist.outcomes) {
                    continue;
                }
                if strict_parent_bases(&p.world, &d)? != qpa {
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
                None => {
                    failed = Some(d);
                    break;
                }
            }
        }
        match failed {
            None => {
                let formula = assemble(g, q, &y_prime, &records)?;
                let mut res = IdentResult::identified(formula, y_prime, records);
                res.attempted = attempts;
                return Ok(res);
            }
            Some(d) => attempts.push(AttemptRecord {
                y_prime,
                failed_district: d,
                reason: "no admissible input covers the district".into(),
            }),
        }
    }
    let mut res = IdentResult::unknown(Vec::new());
    res.attempted = attempts;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::result::Status;
    use graph_core::{examples, vset};
    use kernel_algebra::{render, RenderFormat};
    use swig::Intervention;

    fn query() -> Query {
        Query::new(
            vset(["Y"]),
            Intervention::symbolic([("X1", "x1"), ("X2", "x2")]),
        )
    }

    fn margins() -> Vec<InputDist> {
        vec![
            InputDist::marginal(vset(["W"]), Intervention::symbolic([("X1", "x1")])),
            InputDist::marginal(vset(["W", "Y"]), Intervention::symbolic([("X2", "x2")])),
        ]
    }

    #[test]
    fn surrogate_margins_identify_through_smaller_margin() {
        let g = examples::surrogate_pair();
        let r = m_id(&g, &margins(), &query()).unwrap();
        assert_eq!(r.status, Status::Identified);
        // The full margin Y* = {U, W, Y} fails (no input covers {U, Y})
        // and is recorded as attempted; the winning margin is {W, Y}.
        assert_eq!(r.y_prime, Some(vset(["W", "Y"])));
        assert!(r
            .attempted
            .iter()
            .any(|a| a.y_prime == vset(["U", "W", "Y"])
                && a.failed_district == vset(["U", "Y"])));
        let text = render(r.formula.as_ref().unwrap(), RenderFormat::Text);
        assert_eq!(text, "Σ_W p(Y(x_2) | W) p(W(x_1))");
    }

    #[test]
    fn provenance_names_both_inputs() {
        let g = examples::surrogate_pair();
        let r = m_id(&g, &margins(), &query()).unwrap();
        let find = |d: &graph_core::VertexSet| {
            r.provenance.iter().find(|rec| &rec.district == d).unwrap()
        };
        assert_eq!(find(&vset(["Y"])).input, 1);
        assert_eq!(find(&vset(["Y"])).sequence, vec![graph_core::VertexId::from("W")]);
        assert_eq!(find(&vset(["W"])).input, 0);
        assert!(find(&vset(["W"])).sequence.is_empty());
    }

    #[test]
    fn missing_surrogate_world_is_unknown_not_refuted() {
        let g = examples::surrogate_pair();
        let z = vec![InputDist::marginal(
            vset(["W"]),
            Intervention::symbolic([("X1", "x1")]),
        )];
        let r = m_id(&g, &z, &query()).unwrap();
        assert_eq!(r.status, Status::Unknown);
        assert!(r.formula.is_none());
        assert!(!r.attempted.is_empty());
    }

    #[test]
    fn strict_parent_mismatch_blocks_a_margin_input() {
        // In the surrogate pair, p({W, Y}(x1)) projects out U and X2, so
        // Y gains no x2 parent there; the margin cannot serve a district
        // whose query-world strict parents include X2.
        let g = examples::surrogate_pair();
        let z = vec![
            InputDist::marginal(vset(["W", "Y"]), Intervention::symbolic([("X1", "x1")])),
            InputDist::marginal(vset(["W"]), Intervention::symbolic([("X1", "x1")])),
        ];
        let r = m_id(&g, &z, &query()).unwrap();
        assert_eq!(r.status, Status::Unknown);
    }
}
