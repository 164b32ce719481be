//! Exact numeric evaluation of kernel expressions against registered tables.
//!
//! Every input distribution referenced by a [`KernelExpr`](crate::KernelExpr)
//! leaf must be registered as a [`TabularDist`] under its input id. The table
//! for an input carries one column per outcome variable, one per (unpinned)
//! observed conditioning variable, and one per *symbolically* intervened
//! variable — that column is named by the intervened variable itself and
//! ranges over its levels, so that tables from different worlds align by
//! name. Concretely intervened and pinned variables are baked in and carry no
//! column.

use std::collections::BTreeMap;

use graph_core::VertexId;
use swig::ValueToken;

use crate::error::KernelError;
use crate::expr::KernelExpr;
use crate::table::TabularDist;

/// Result of evaluating an expression: the table plus a flag recording
/// whether any `0/0` was resolved to 0 along the way.
#[derive(Debug, Clone)]
pub struct EvalOutcome {
    pub table: TabularDist,
    pub zero_over_zero: bool,
}

/// Evaluate `expr` against the registered input tables.
///
/// `cards` pins the cardinality of every variable; registered tables are
/// checked against it. Division by zero under nonzero mass raises
/// [`KernelError::Positivity`]; `0/0` evaluates to 0 and sets the
/// `zero_over_zero` flag on the result.
pub fn evaluate(
    expr: &KernelExpr,
    registry: &BTreeMap<usize, TabularDist>,
    cards: &BTreeMap<VertexId, usize>,
) -> Result<EvalOutcome, KernelError> {
    expr.shape()?;
    let mut flag = false;
    let table = eval_node(expr, registry, cards, &mut flag)?;
    Ok(EvalOutcome {
        table,
        zero_over_zero: flag,
    })
}

fn eval_node(
    expr: &KernelExpr,
    registry: &BTreeMap<usize, TabularDist>,
    cards: &BTreeMap<VertexId, usize>,
    flag: &mut bool,
) -> Result<TabularDist, KernelError> {
    match expr {
        KernelExpr::Base { dist } => {
            let table = registry
                .get(&dist.input_id)
                .ok_or(KernelError::MissingInput(dist.input_id))?;
            for (v, c) in table.vars() {
                if let Some(expected) = cards.get(v) {
                    if expected != c {
                        return Err(KernelError::CardinalityMismatch {
                            vertex: v.clone(),
                            left: *expected,
                            right: *c,
                        });
                    }
                }
            }
            // Sanity: every outcome of the reference must be a column.
            for v in &dist.scope {
                if table.card(v).is_none() {
                    return Err(KernelError::Table(format!(
                        "table for input {} lacks outcome column {v}",
                        dist.input_id
                    )));
                }
            }
            Ok(table.clone())
        }
        KernelExpr::Marginal { child, sum_out } => {
            let t = eval_node(child, registry, cards, flag)?;
            t.marginalize_out(sum_out)
        }
        KernelExpr::Conditional { child, given } => {
            let t = eval_node(child, registry, cards, flag)?;
            let child_outcomes = child.shape()?.outcomes;
            let dropped = child_outcomes.difference(given).cloned().collect();
            let den = t.marginalize_out(&dropped)?;
            // The numerator never exceeds its own marginal, so only 0/0 can
            // occur here.
            let (q, z) = TabularDist::divide(&t, &den)?;
            *flag |= z;
            Ok(q)
        }
        KernelExpr::Ratio { num, den } => {
            let tn = eval_node(num, registry, cards, flag)?;
            let td = eval_node(den, registry, cards, flag)?;
            let (q, z) = TabularDist::divide(&tn, &td)?;
            *flag |= z;
            Ok(q)
        }
        KernelExpr::Product { children } => {
            let mut acc = TabularDist::scalar(1.0);
            for c in children {
                let t = eval_node(c, registry, cards, flag)?;
                acc = TabularDist::multiply(&acc, &t)?;
            }
            Ok(acc)
        }
        KernelExpr::EvalAt { child, at } => {
            let mut t = eval_node(child, registry, cards, flag)?;
            for (v, tok) in at.iter() {
                match tok {
                    // A symbolic binding leaves the context column free: the
                    // result is tabulated for every level of it.
                    ValueToken::Symbolic(_) => {}
                    ValueToken::Concrete(level) => {
                        if t.card(&v).is_some() {
                            t = t.slice(&v, *level)?;
                        }
                    }
                }
            }
            Ok(t)
        }
    }
}
