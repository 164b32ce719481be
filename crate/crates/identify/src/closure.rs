//! Chain-rule closure of an input collection.
//!
//! Conditional inputs often arrive in pieces: `p(S | C ∪ W)` together with
//! `p(W | C)` determines `p(S ∪ W | C)` by the chain rule, and a
//! conditioning variable that is m-separated from the outcomes given the
//! rest can be added to the conditioning set for free.  The closure
//! saturates the collection under both moves, recording a derivation log
//! and, for every derived input, an expression over the raw inputs only.

use crate::error::IdentError;
use crate::input::{number_inputs, InputDist};
use crate::world::input_world;
use graph_core::{m_separated, MixedGraph, VertexId, VertexSet};
use itertools::Itertools;
use kernel_algebra::KernelExpr;
use swig::ValueToken;

/// Fixpoint rounds for [`chain_rule_close`]; enough for the collections
/// this crate targets while bounding work on adversarial ones.
pub const DEFAULT_CLOSURE_ROUNDS: usize = 3;

/// Hard cap on the number of closed inputs kept.
const CLOSURE_ITEM_CAP: usize = 64;

/// Largest unpinned conditioning set whose bipartitions are enumerated.
const BIPARTITION_LIMIT: usize = 12;

/// Where a closed input came from.
#[derive(Debug, Clone, PartialEq)]
pub enum InputOrigin {
    /// Supplied by the caller.
    Raw,
    /// A source input with one more conditioning variable, justified by an
    /// m-separation certificate.
    Upgraded {
        from: usize,
        added: VertexId,
        certificate: String,
    },
    /// The chain-rule product of two closed inputs.
    Composed { head: usize, supplier: usize },
}

/// One distribution available after closure, with an evaluable expression
/// that bottoms out in raw input tables.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedInput {
    pub dist: InputDist,
    pub expr: KernelExpr,
    pub origin: InputOrigin,
}

/// The closed collection and its derivation log.
#[derive(Debug, Clone, PartialEq)]
pub struct Closure {
    pub inputs: Vec<ClosedInput>,
    pub log: Vec<String>,
}

fn names(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

/// The pinned token to use when adding `x` to a conditioning set: any
/// token already recorded for `x` by an input, else the lowercased vertex
/// name.
fn pin_token_for(items: &[ClosedInput], x: &VertexId) -> ValueToken {
    for it in items {
        if let Some(p) = &it.dist.pinned_level {
            if let Some(t) = p.get(x) {
                return t.clone();
            }
        }
    }
    ValueToken::symbolic(x.to_string().to_lowercase())
}

/// Two inputs describe the same distribution family (ignoring index).
fn same_family(a: &InputDist, b: &InputDist) -> bool {
    a.outcomes == b.outcomes
        && a.given == b.given
        && a.do_ == b.do_
        && a.pinned_level == b.pinned_level
}

/// Saturates `z` under conditioning upgrades and chain-rule compositions.
///
/// An upgrade adds one vertex `X` to an input's conditioning set when
/// `S ⊥ X | C` holds in the input's world graph (the po-calculus
/// conditioning rule); the new input is pinned at `X`'s recorded level
/// since the underlying table has no `X` column.  A composition multiplies
/// `p(S | C¹ ∪ C²)` by a supplier of `p(C¹ | C²)` into
/// `p(S ∪ C¹ | C²)`.  Both moves iterate to a fixpoint, at most
/// `max_rounds` times.
pub fn chain_rule_close(
    g: &MixedGraph,
    z: &[InputDist],
    max_rounds: usize,
) -> Result<Closure, IdentError> {
    let numbered = number_inputs(g, z)?;
    let mut items: Vec<ClosedInput> = Vec::new();
    let mut log: Vec<String> = Vec::new();
    for d in &numbered {
        items.push(ClosedInput {
            expr: d.base_expr(g)?,
            dist: d.clone(),
            origin: InputOrigin::Raw,
        });
    }

    for round in 0..max_rounds {
        let mut changed = false;

        // Conditioning upgrades.  Candidates are vertices some input
        // conditions on: those are what compositions will need aligned.
        let pool: VertexSet = items
            .iter()
            .flat_map(|it| it.dist.given.iter().cloned())
            .collect();
        for j in 0..items.len() {
            if items.len() >= CLOSURE_ITEM_CAP {
                break;
            }
            let it = items[j].clone();
            let sj = &it.dist.outcomes;
            let cj = &it.dist.given;
            let bj = &it.dist.do_;
            for x in &pool {
                if sj.contains(x) || cj.contains(x) || bj.contains_key(x) {
                    continue;
                }
                let new_given: VertexSet = cj.iter().cloned().chain([x.clone()]).collect();
                if items
                    .iter()
                    .any(|o| o.dist.outcomes == *sj && o.dist.given == new_given && o.dist.do_ == *bj)
                {
                    continue;
                }
                let keep: VertexSet = sj
                    .iter()
                    .chain(cj.iter())
                    .chain([x])
                    .cloned()
                    .collect();
                let world = input_world(g, bj, &keep)?;
                let x_set: VertexSet = [x.clone()].into_iter().collect();
                if !m_separated(world.graph(), sj, &x_set, cj)? {
                    continue;
                }
                let certificate = if cj.is_empty() {
                    format!("{} ⊥ {}", names(sj), x)
                } else {
                    format!("{} ⊥ {} | {}", names(sj), x, names(cj))
                };
                let mut pinned = it.dist.pinned_level.clone().unwrap_or_default();
                pinned = pinned.with(x.clone(), pin_token_for(&items, x));
                let dist = InputDist::conditional(
                    sj.clone(),
                    bj.clone(),
                    new_given,
                    Some(pinned),
                )
                .with_id(items.len());
                log.push(format!(
                    "round {round}: input {} conditioned on {} as input {} — certified {}",
                    it.dist.id, x, dist.id, certificate
                ));
                // The underlying table is unchanged: the separation makes
                // the extra conditioning vacuous, so the expression is the
                // source expression itself.
                items.push(ClosedInput {
                    expr: it.expr.clone(),
                    dist,
                    origin: InputOrigin::Upgraded {
                        from: it.dist.id,
                        added: x.clone(),
                        certificate,
                    },
                });
                changed = true;
            }
        }

        // Chain-rule compositions.
        for i in 0..items.len() {
            if items.len() >= CLOSURE_ITEM_CAP {
                break;
            }
            let head = items[i].clone();
            let ci = &head.dist.given;
            if ci.is_empty() {
                continue;
            }
            let head_pins = head.dist.pinned_level.clone().unwrap_or_default();
            // A pinned conditioning variable is only available as a slice,
            // so it can never move to the outcome side.
            let movable: Vec<VertexId> = ci
                .iter()
                .filter(|v| !head_pins.contains_key(v))
                .cloned()
                .collect();
            if movable.len() > BIPARTITION_LIMIT {
                continue;
            }
            for c1_vec in movable.iter().powerset() {
                if c1_vec.is_empty() {
                    continue;
                }
                let c1: VertexSet = c1_vec.into_iter().cloned().collect();
                let c2: VertexSet = ci.difference(&c1).cloned().collect();
                for s in 0..items.len() {
                    if s == i || items.len() >= CLOSURE_ITEM_CAP {
                        continue;
                    }
                    let supp = items[s].clone();
                    if supp.dist.given != c2 {
                        continue;
                    }
                    if !c1.is_subset(&supp.dist.outcomes) {
                        continue;
                    }
                    if supp.dist.do_ != head.dist.do_ {
                        continue;
                    }
                    let supp_pins = supp.dist.pinned_level.clone().unwrap_or_default();
                    let Some(pins) = head_pins.merge(&supp_pins) else {
                        continue;
                    };
                    let outcomes: VertexSet =
                        head.dist.outcomes.union(&c1).cloned().collect();
                    let pinned = if pins.is_empty() { None } else { Some(pins) };
                    let dist = InputDist::conditional(
                        outcomes,
                        head.dist.do_.clone(),
                        c2.clone(),
                        pinned,
                    )
                    .with_id(items.len());
                    if items.iter().any(|o| same_family(&o.dist, &dist)) {
                        continue;
                    }
                    let extra: VertexSet =
                        supp.dist.outcomes.difference(&c1).cloned().collect();
                    let supp_expr = if extra.is_empty() {
                        supp.expr.clone()
                    } else {
                        kernel_algebra::marginalize(supp.expr.clone(), extra)?
                    };
                    let expr =
                        kernel_algebra::product(vec![head.expr.clone(), supp_expr])?;
                    log.push(format!(
                        "round {round}: chain rule composed input {} × input {} as input {}: {}",
                        head.dist.id, supp.dist.id, dist.id, dist
                    ));
                    items.push(ClosedInput {
                        expr,
                        dist,
                        origin: InputOrigin::Composed {
                            head: head.dist.id,
                            supplier: supp.dist.id,
                        },
                    });
                    changed = true;
                }
            }
        }

        if !changed {
            break;
        }
    }
    Ok(Closure { inputs: items, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::{examples, vset};
    use swig::Intervention;

    fn enrollment_inputs() -> Vec<InputDist> {
        let x1 = Intervention::symbolic([("X1", "x1")]);
        let x2 = Intervention::symbolic([("X2", "x2")]);
        let pin = Intervention::symbolic([("C", "c")]);
        vec![
            InputDist::conditional(
                vset(["J", "R2", "W2", "X2"]),
                x1.clone(),
                vset(["C", "R1", "W1"]),
                Some(pin.clone()),
            ),
            InputDist::conditional(vset(["R1"]), x1.clone(), vset(["W1"]), None),
            InputDist::conditional(vset(["W1"]), x1.clone(), vset(["C"]), Some(pin)),
            InputDist::marginal(vset(["C", "J", "R1", "R2", "W2"]), x2),
        ]
    }

    #[test]
    fn enrollment_closure_builds_the_joint_conditional() {
        let g = examples::enrollment();
        let closure =
            chain_rule_close(&g, &enrollment_inputs(), DEFAULT_CLOSURE_ROUNDS).unwrap();
        // The conditioning upgrade on input 1 is certified by the
        // separation of R1 from C given W1 in the x1 world.
        assert!(
            closure.log.iter().any(|l| l.contains("R1 ⊥ C | W1")),
            "log: {:#?}",
            closure.log
        );
        // The full joint conditional over the x1 world is derived.
        let target_outcomes = vset(["J", "R1", "R2", "W1", "W2", "X2"]);
        let full = closure
            .inputs
            .iter()
            .find(|ci| ci.dist.outcomes == target_outcomes && ci.dist.given == vset(["C"]))
            .expect("composed joint conditional present");
        assert_eq!(
            full.dist.pinned_level,
            Some(Intervention::symbolic([("C", "c")]))
        );
        assert!(matches!(full.origin, InputOrigin::Composed { .. }));
    }

    #[test]
    fn no_upgrade_without_separation() {
        // p(W1(x1) | C = c) cannot gain R1: W1 → R1 connects them.
        let g = examples::enrollment();
        let z = vec![
            InputDist::conditional(
                vset(["W1"]),
                Intervention::symbolic([("X1", "x1")]),
                vset(["C"]),
                Some(Intervention::symbolic([("C", "c")])),
            ),
            InputDist::conditional(
                vset(["R2"]),
                Intervention::symbolic([("X1", "x1")]),
                vset(["R1"]),
                None,
            ),
        ];
        let closure = chain_rule_close(&g, &z, DEFAULT_CLOSURE_ROUNDS).unwrap();
        assert!(!closure
            .inputs
            .iter()
            .any(|ci| ci.dist.outcomes == vset(["W1"])
                && ci.dist.given.contains(&graph_core::VertexId::from("R1"))));
    }

    #[test]
    fn disjoint_inputs_close_to_themselves() {
        let g = examples::surrogate_pair();
        let z = vec![
            InputDist::marginal(vset(["W"]), Intervention::symbolic([("X1", "x1")])),
            InputDist::marginal(vset(["W", "Y"]), Intervention::symbolic([("X2", "x2")])),
        ];
        let closure = chain_rule_close(&g, &z, DEFAULT_CLOSURE_ROUNDS).unwrap();
        assert_eq!(closure.inputs.len(), 2);
        assert!(closure.log.is_empty());
    }

    #[test]
    fn composition_expressions_bottom_out_in_raw_ids() {
        let g = examples::enrollment();
        let closure =
            chain_rule_close(&g, &enrollment_inputs(), DEFAULT_CLOSURE_ROUNDS).unwrap();
        fn max_base_id(e: &KernelExpr) -> usize {
            match e {
                KernelExpr::Base { dist } => dist.input_id,
                KernelExpr::Marginal { child, .. }
                | KernelExpr::Conditional { child, .. }
                | KernelExpr::EvalAt { child, .. } => max_base_id(child),
                KernelExpr::Ratio { num, den } => max_base_id(num).max(max_base_id(den)),
                KernelExpr::Product { children } => {
                    children.iter().map(max_base_id).max().unwrap_or(0)
                }
            }
        }
        for ci in &closure.inputs {
            assert!(
                max_base_id(&ci.expr) < 4,
                "expression for {} references a derived id",
                ci.dist
            );
        }
    }
}
