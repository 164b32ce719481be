//! Identification from arbitrary conditional and unconditional inputs.

use crate::closure::{chain_rule_close, ClosedInput, DEFAULT_CLOSURE_ROUNDS};
use crate::error::IdentError;
use crate::input::{InputDist, Query};
use crate::result::{AttemptRecord, DistrictRecord, IdentResult};
use crate::selection::selection_district;
use crate::world::{
    assemble, district_kernel, input_world, margin_candidates, query_world,
    strict_parent_bases, MARGIN_SEARCH_LIMIT,
};
use graph_core::{MixedGraph, VertexSet};
use swig::Swig;

/// A closed input paired with its world graph.
struct Prepared {
    item: ClosedInput,
    world: Swig,
}

/// Decides `p(Y(a))` from a mixed collection of interventional margins and
/// conditional slices.
///
/// The collection is first saturated under conditioning upgrades and
/// chain-rule compositions ([`chain_rule_close`]); the derivation log of
/// that closure is attached to the result.  Candidate margins
/// `Y ⊆ Y′ ⊆ Y*` are then searched as in [`m_id`](crate::m_id), but each
/// district may be taken from any closed input whose world agrees on the
/// district's strict parent set: an unconditional input through the plain
/// district test, a conditional one through the fixed-last superset
/// machinery of the selection lemma.  Every emitted kernel bottoms out in
/// the raw input tables.  The search is exhaustive within its caps but the
/// criterion is not known complete, so exhaustion reports `Unknown`.
pub fn e_id(g: &MixedGraph, z: &[InputDist], q: &Query) -> Result<IdentResult, IdentError> {
    q.validate(g)?;
    if z.is_empty() {
        return Err(IdentError::NoInputs);
    }
    let closure = chain_rule_close(g, z, DEFAULT_CLOSURE_ROUNDS)?;
    let y_star = swig::ystar(g, &q.y, &q.a)?;
    let extras = y_star.difference(&q.y).count();
    if extras > MARGIN_SEARCH_LIMIT {
        return Err(IdentError::SearchSpaceTooLarge {
            size: extras,
            limit: MARGIN_SEARCH_LIMIT,
        });
    }
    let mut prepared = Vec::new();
    for item in &closure.inputs {
        let keep: VertexSet = item
            .dist
            .outcomes
            .union(&item.dist.given)
            .cloned()
            .collect();
        let world = input_world(g, &item.dist.do_, &keep)?;
        prepared.push(Prepared {
            item: item.clone(),
            world,
        });
    }

    let mut attempts = Vec::new();
    for y_prime in margin_candidates(&q.y, &y_star) {
        let qw = query_world(g, &q.a, &y_prime)?;
        let mut records = Vec::new();
        let mut failed = None;
        for d in qw.graph().districts() {
            let qpa = strict_parent_bases(&qw, &d)?;
            let mut hit = None;
            for p in &prepared {
                let dist = &p.item.dist;
                if !dist.consistent_with(&q.a) {
                    continue;
                }
                if let Some(pin) = &dist.pinned_level {
                    if !pin.is_consistent_with(&q.a) {
                        continue;
                    }
                }
                if !d.is_subset(&dist.outcomes) {
                    continue;
                }
                if strict_parent_bases(&p.world, &d)? != qpa {
                    continue;
                }
                if dist.given.is_empty() {
                    if let Some(rep) = district_kernel(p.world.graph(), &p.item.expr, &d)? {
                        hit = Some(DistrictRecord {
                            district: d.clone(),
                            input: dist.id,
                            input_desc: dist.to_string(),
                            sequence: rep.sequence,
                            suffix: Vec::new(),
                            z_set: None,
                            d_bar: None,
                            kernel: rep.kernel,
                        });
                        break;
                    }
                } else if let Some(sf) = selection_district(&p.world, dist, &p.item.expr, &d)? {
                    hit = Some(DistrictRecord {
                        district: d.clone(),
                        input: dist.id,
                        input_desc: dist.to_string(),
                        sequence: sf.prefix,
                        suffix: sf.suffix,
                        z_set: Some(sf.z_set),
                        d_bar: Some(sf.d_bar),
                        kernel: sf.kernel,
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
                res.closure_log = closure.log.clone();
                return Ok(res);
            }
            Some(d) => attempts.push(AttemptRecord {
                y_prime,
                failed_district: d,
                reason: "no closed input covers the district".into(),
            }),
        }
    }
    let mut res = IdentResult::unknown(Vec::new());
    res.attempted = attempts;
    res.closure_log = closure.log;
    Ok(res)
}
