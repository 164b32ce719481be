//! Identification from a single observational joint `p(V)`.

use crate::error::IdentError;
use crate::input::{InputDist, Query};
use crate::result::{DistrictRecord, IdentResult};
use crate::world::{assemble, district_kernel, query_world};
use graph_core::MixedGraph;
use swig::Intervention;

/// Decides `p(Y(a))` from the observational joint `p(V)` alone.
///
/// The relevant margin `Y*` is the ancestral closure of `Y` in the world
/// graph; the query is identified iff every district of `G(Y*(a))` is an
/// intrinsic set of `G`, in which case the functional is the product of the
/// district kernels, marginalized and evaluated at `a`.  This decision is
/// complete: a failed district is a proof of non-identifiability, reported
/// as the witness.
pub fn id_classic(g: &MixedGraph, q: &Query) -> Result<IdentResult, IdentError> {
    q.validate(g)?;
    let input = InputDist::marginal(g.random().clone(), Intervention::empty());
    let base = input.base_expr(g)?;
    let y_star = swig::ystar(g, &q.y, &q.a)?;
    let qw = query_world(g, &q.a, &y_star)?;

    let mut records = Vec::new();
    let mut missing = Vec::new();
    for d in qw.graph().districts() {
        match district_kernel(g, &base, &d)? {
            Some(rep) => records.push(DistrictRecord {
                district: d,
                input: 0,
                input_desc: input.to_string(),
                sequence: rep.sequence,
                suffix: Vec::new(),
                z_set: None,
                d_bar: None,
                kernel: rep.kernel,
            }),
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

    #[test]
    fn observational_marginal_is_identified() {
        let g = examples::backdoor();
        let q = Query::new(vset(["Y"]), Intervention::empty());
        let r = id_classic(&g, &q).unwrap();
        assert_eq!(r.status, Status::Identified);
        assert_eq!(r.y_prime, Some(vset(["A", "C", "Y"])));
        assert!(r.formula.is_some());
    }

    #[test]
    fn backdoor_effect_is_identified_with_two_districts() {
        let g = examples::backdoor();
        let q = Query::new(vset(["Y"]), Intervention::symbolic([("A", "a")]));
        let r = id_classic(&g, &q).unwrap();
        assert_eq!(r.status, Status::Identified);
        assert_eq!(r.y_prime, Some(vset(["C", "Y"])));
        assert_eq!(r.provenance.len(), 2);
        for rec in &r.provenance {
            assert_eq!(rec.input, 0);
        }
    }

    #[test]
    fn bow_arc_effect_is_not_identified() {
        // A → Y with A ↔ Y: the classic non-identifiable bow.
        let g = MixedGraph::new(
            vset(["A", "Y"]),
            vset([] as [&str; 0]),
            [("A".into(), "Y".into())],
            [("A".into(), "Y".into())],
        )
        .unwrap();
        let q = Query::new(vset(["Y"]), Intervention::symbolic([("A", "a")]));
        let r = id_classic(&g, &q).unwrap();
        assert_eq!(r.status, Status::NotIdentified);
        assert_eq!(r.witness, Some(vec![vset(["Y"])]));
    }

    #[test]
    fn query_validation_errors_surface() {
        let g = examples::backdoor();
        let q = Query::new(vset(["Y"]), Intervention::symbolic([("Y", "y")]));
        assert_eq!(
            id_classic(&g, &q).unwrap_err(),
            IdentError::OutcomeIntervened("Y".into())
        );
    }
}
