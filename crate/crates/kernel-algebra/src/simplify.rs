//! Structural simplification of kernel expressions.
//!
//! Applies *safe* rewrites only, bottom-up to a fixpoint:
//!
//! - drop empty marginalizations and vacuous point-evaluations;
//! - merge nested marginals, nested conditionals, and consistent nested
//!   point-evaluations;
//! - flatten nested products and drop unit factors;
//! - cancel a ratio of an expression to itself;
//! - rewrite a ratio of an expression to its own marginal as a conditional.
//!
//! Every rewrite is evaluation-preserving: exactly so where it replaces one
//! computation by the identical one (conditional/marginal folds), and for the
//! cancellation rewrite on all strictly positive inputs (on zero slices the
//! original resolves `0/0` to 0 by convention, the cancelled form to 1).

use graph_core::VertexSet;
use swig::{Intervention, ValueToken};

use crate::expr::KernelExpr;

const MAX_PASSES: usize = 64;

/// Simplify an expression by applying safe rewrites to a fixpoint.
pub fn simplify(expr: &KernelExpr) -> KernelExpr {
    let mut current = expr.clone();
    for _ in 0..MAX_PASSES {
        let next = pass(&current);
        if next == current {
            break;
        }
        current = next;
    }
    current
}

/// One bottom-up pass: simplify children, then rewrite the node.
fn pass(expr: &KernelExpr) -> KernelExpr {
    let rebuilt = match expr {
        KernelExpr::Base { .. } => expr.clone(),
        KernelExpr::Marginal { child, sum_out } => KernelExpr::Marginal {
            child: Box::new(pass(child)),
            sum_out: sum_out.clone(),
        },
        KernelExpr::Conditional { child, given } => KernelExpr::Conditional {
            child: Box::new(pass(child)),
            given: given.clone(),
        },
        KernelExpr::Ratio { num, den } => KernelExpr::Ratio {
            num: Box::new(pass(num)),
            den: Box::new(pass(den)),
        },
        KernelExpr::Product { children } => KernelExpr::Product {
            children: children.iter().map(pass).collect(),
        },
        KernelExpr::EvalAt { child, at } => KernelExpr::EvalAt {
            child: Box::new(pass(child)),
            at: at.clone(),
        },
    };
    rewrite(rebuilt)
}

fn rewrite(expr: KernelExpr) -> KernelExpr {
    match expr {
        KernelExpr::Marginal { child, sum_out } => {
            if sum_out.is_empty() {
                return *child;
            }
            if let KernelExpr::Marginal {
                child: inner,
                sum_out: inner_sum,
            } = *child
            {
                let merged: VertexSet = inner_sum.union(&sum_out).cloned().collect();
                return KernelExpr::Marginal {
                    child: inner,
                    sum_out: merged,
                };
            }
            KernelExpr::Marginal { child, sum_out }
        }
        KernelExpr::Conditional { child, given } => {
            // Successive conditionings compose into one conditioning on the
            // union (same result tables, including the zero conventions).
            if let KernelExpr::Conditional {
                child: inner,
                given: inner_given,
            } = *child
            {
                let merged: VertexSet = inner_given.union(&given).cloned().collect();
                return KernelExpr::Conditional {
                    child: inner,
                    given: merged,
                };
            }
            KernelExpr::Conditional { child, given }
        }
        KernelExpr::Product { children } => {
            let mut flat = Vec::with_capacity(children.len());
            for c in children {
                match c {
                    KernelExpr::Product { children: inner } => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            if flat.len() == 1 {
                return flat.pop().expect("length checked");
            }
            KernelExpr::Product { children: flat }
        }
        KernelExpr::Ratio { num, den } => {
            if den.is_unit() {
                return *num;
            }
            if num == den {
                return KernelExpr::unit();
            }
            // e / (sum of e over s)  ==  e conditioned on its other outcomes:
            // both sides divide by the identical marginal table.
            if let KernelExpr::Marginal {
                child: den_child,
                sum_out,
            } = den.as_ref()
            {
                if **den_child == *num {
                    if let Ok(shape) = num.shape() {
                        let given: VertexSet =
                            shape.outcomes.difference(sum_out).cloned().collect();
                        return KernelExpr::Conditional { child: num, given };
                    }
                }
            }
            KernelExpr::Ratio { num, den }
        }
        KernelExpr::EvalAt { child, at } => {
            if let KernelExpr::EvalAt {
                child: inner,
                at: inner_at,
            } = child.as_ref()
            {
                if let Some(merged) = inner_at.merge(&at) {
                    return KernelExpr::EvalAt {
                        child: inner.clone(),
                        at: merged,
                    };
                }
            }
            let Ok(shape) = child.shape() else {
                return KernelExpr::EvalAt { child, at };
            };
            // Keep a binding only where it does something: a concrete value
            // slices an existing context column; a symbolic value is numeric
            // no-op but stays visible while it names an observed quantity.
            let kept: Vec<_> = at
                .iter()
                .filter(|&(v, tok)| match tok {
                    ValueToken::Symbolic(_) => {
                        shape.outcomes.contains(v) || shape.observed.contains(v)
                    }
                    ValueToken::Concrete(_) => {
                        shape.observed.contains(v) || shape.world.contains(v)
                    }
                })
                .map(|(v, tok)| (v.clone(), tok.clone()))
                .collect();
            if kept.is_empty() {
                return *child;
            }
            if kept.len() == at.len() {
                return KernelExpr::EvalAt { child, at };
            }
            KernelExpr::EvalAt {
                child,
                at: kept.into_iter().collect::<Intervention>(),
            }
        }
        other => other,
    }
}
