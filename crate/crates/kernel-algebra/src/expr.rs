//! Symbolic kernel expressions.
//!
//! A [`KernelExpr`] is a tree whose leaves reference user-supplied input
//! distributions and whose internal nodes are the closed set of operations the
//! identification machinery needs: marginalization, conditioning, pointwise
//! ratio, product, and restriction of context variables to fixed values.
//! Every node has a well-defined *shape* — which variables it is a
//! distribution over and which variables index its context — computed by
//! [`KernelExpr::shape`].

use std::collections::BTreeMap;

use graph_core::{VertexId, VertexSet};
use serde::{Deserialize, Serialize};
use swig::{Intervention, ValueToken};

use crate::error::KernelError;

/// A reference to one user-supplied input distribution.
///
/// `scope` lists the outcome variables, `context` the intervened variables
/// with their assigned values, `given` the observed conditioning variables,
/// and `pinned` the subset of `given` that is only available at one recorded
/// value. `labels` records, for display purposes, which intervention tokens
/// each variable reacts to (its world annotation, e.g. `Y(x_2)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistRef {
    pub input_id: usize,
    pub scope: VertexSet,
    #[serde(default, skip_serializing_if = "Intervention::is_empty")]
    pub context: Intervention,
    #[serde(default, skip_serializing_if = "VertexSet::is_empty")]
    pub given: VertexSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinned: Option<Intervention>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<VertexId, Vec<ValueToken>>,
}

impl DistRef {
    /// Build a reference, checking that scope, context, and given are
    /// pairwise disjoint and that pinned variables are conditioned on.
    pub fn new(
        input_id: usize,
        scope: VertexSet,
        context: Intervention,
        given: VertexSet,
        pinned: Option<Intervention>,
        labels: BTreeMap<VertexId, Vec<ValueToken>>,
    ) -> Result<Self, KernelError> {
        if scope.is_empty() {
            return Err(KernelError::Scope(format!(
                "input {input_id} has an empty outcome set"
            )));
        }
        for v in context.keys() {
            if scope.contains(&v) {
                return Err(KernelError::Scope(format!(
                    "input {input_id}: {v} is both an outcome and intervened on"
                )));
            }
            if given.contains(&v) {
                return Err(KernelError::Scope(format!(
                    "input {input_id}: {v} is both conditioned on and intervened on"
                )));
            }
        }
        if let Some(v) = scope.intersection(&given).next() {
            return Err(KernelError::Scope(format!(
                "input {input_id}: {v} is both an outcome and conditioned on"
            )));
        }
        if let Some(p) = &pinned {
            for v in p.keys() {
                if !given.contains(&v) {
                    return Err(KernelError::Scope(format!(
                        "input {input_id}: pinned variable {v} is not conditioned on"
                    )));
                }
            }
        }
        Ok(DistRef {
            input_id,
            scope,
            context,
            given,
            pinned,
            labels,
        })
    }
}

/// A symbolic kernel expression tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum KernelExpr {
    /// A leaf referencing one input distribution.
    Base { dist: DistRef },
    /// Sum the child over `sum_out`.
    Marginal {
        child: Box<KernelExpr>,
        sum_out: VertexSet,
    },
    /// Condition the child on a subset of its outcomes.
    Conditional {
        child: Box<KernelExpr>,
        given: VertexSet,
    },
    /// Pointwise ratio of two kernels.
    Ratio {
        num: Box<KernelExpr>,
        den: Box<KernelExpr>,
    },
    /// Product of kernels with disjoint outcome sets; empty product is the
    /// unit kernel (constant 1).
    Product { children: Vec<KernelExpr> },
    /// Restrict context variables of the child to fixed values.
    EvalAt {
        child: Box<KernelExpr>,
        at: Intervention,
    },
}

/// The variable bookkeeping of an expression node.
///
/// `outcomes` are the variables the kernel is a (conditional) distribution
/// over; `observed` are context variables that came from conditioning on
/// observed quantities; `world` are context variables introduced by symbolic
/// interventions (one per symbolically intervened variable, named by that
/// variable). Concretely intervened variables index nothing and appear in no
/// set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Shape {
    pub outcomes: VertexSet,
    pub observed: VertexSet,
    pub world: VertexSet,
}

impl Shape {
    /// All variables that index the kernel's table: outcomes and both kinds
    /// of context.
    pub fn dims(&self) -> VertexSet {
        let mut d = self.outcomes.clone();
        d.extend(self.observed.iter().cloned());
        d.extend(self.world.iter().cloned());
        d
    }
}

impl KernelExpr {
    /// The unit kernel: an empty product, constant 1.
    pub fn unit() -> Self {
        KernelExpr::Product {
            children: Vec::new(),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, KernelExpr::Product { children } if children.is_empty())
    }

    pub fn base(dist: DistRef) -> Self {
        KernelExpr::Base { dist }
    }

    /// Compute the shape of this expression, validating scope discipline of
    /// every node on the way.
    pub fn shape(&self) -> Result<Shape, KernelError> {
        match self {
            KernelExpr::Base { dist } => {
                let world = dist
                    .context
                    .iter()
                    .filter(|(_, tok)| matches!(tok, ValueToken::Symbolic(_)))
                    .map(|(v, _)| v.clone())
                    .collect();
                let observed = if let Some(p) = &dist.pinned {
                    // Pinned conditioning variables are recorded at a single
                    // value and therefore index nothing.
                    dist.given
                        .iter()
                        .filter(|v| p.get(v).is_none())
                        .cloned()
                        .collect()
                } else {
                    dist.given.clone()
                };
                Ok(Shape {
                    outcomes: dist.scope.clone(),
                    observed,
                    world,
                })
            }
            KernelExpr::Marginal { child, sum_out } => {
                let mut s = child.shape()?;
                if let Some(v) = sum_out.difference(&s.outcomes).next() {
                    return Err(KernelError::Scope(format!(
                        "cannot marginalize {v}: not an outcome of the child"
                    )));
                }
                s.outcomes = s.outcomes.difference(sum_out).cloned().collect();
                Ok(s)
            }
            KernelExpr::Conditional { child, given } => {
                let mut s = child.shape()?;
                if let Some(v) = given.difference(&s.outcomes).next() {
                    return Err(KernelError::Scope(format!(
                        "cannot condition on {v}: not an outcome of the child"
                    )));
                }
                s.outcomes = s.outcomes.difference(given).cloned().collect();
                s.observed.extend(given.iter().cloned());
                Ok(s)
            }
            KernelExpr::Ratio { num, den } => {
                let n = num.shape()?;
                let d = den.shape()?;
                if let Some(v) = d.outcomes.difference(&n.outcomes).next() {
                    return Err(KernelError::Scope(format!(
                        "ratio denominator outcome {v} is not an outcome of the numerator"
                    )));
                }
                let outcomes: VertexSet = n.outcomes.difference(&d.outcomes).cloned().collect();
                let mut observed: VertexSet = n.observed.union(&d.observed).cloned().collect();
                // Denominator outcomes become context variables of the ratio.
                observed.extend(d.outcomes.iter().cloned());
                let world: VertexSet = n.world.union(&d.world).cloned().collect();
                let observed = observed.difference(&outcomes).cloned().collect();
                let world = world.difference(&outcomes).cloned().collect();
                Ok(Shape {
                    outcomes,
                    observed,
                    world,
                })
            }
            KernelExpr::Product { children } => {
                let mut outcomes = VertexSet::new();
                let mut observed = VertexSet::new();
                let mut world = VertexSet::new();
                for c in children {
                    let s = c.shape()?;
                    if let Some(v) = s.outcomes.intersection(&outcomes).next() {
                        return Err(KernelError::ProductOverlap(v.clone()));
                    }
                    outcomes.extend(s.outcomes.iter().cloned());
                    observed.extend(s.observed.iter().cloned());
                    world.extend(s.world.iter().cloned());
                }
                // A context variable supplied by a sibling factor's outcome is
                // bound inside the product.
                let observed = observed.difference(&outcomes).cloned().collect();
                let world = world.difference(&outcomes).cloned().collect();
                Ok(Shape {
                    outcomes,
                    observed,
                    world,
                })
            }
            KernelExpr::EvalAt { child, at } => {
                let s = child.shape()?;
                if let Some((v, _)) = at.iter().find(|&(v, _)| s.outcomes.contains(v)) {
                    return Err(KernelError::Scope(format!(
                        "cannot evaluate outcome variable {v} at a fixed value"
                    )));
                }
                // Concretely bound context variables stop indexing the table.
                let bound: VertexSet = at
                    .iter()
                    .filter(|(_, tok)| matches!(tok, ValueToken::Concrete(_)))
                    .map(|(v, _)| v.clone())
                    .collect();
                Ok(Shape {
                    outcomes: s.outcomes,
                    observed: s.observed.difference(&bound).cloned().collect(),
                    world: s.world.difference(&bound).cloned().collect(),
                })
            }
        }
    }
}

/// Sum `expr` over `sum_out`, which must be outcomes of `expr`.
pub fn marginalize(expr: KernelExpr, sum_out: VertexSet) -> Result<KernelExpr, KernelError> {
    let e = KernelExpr::Marginal {
        child: Box::new(expr),
        sum_out,
    };
    e.shape()?;
    Ok(e)
}

/// Condition `expr` on `given`, which must be outcomes of `expr`.
pub fn condition(expr: KernelExpr, given: VertexSet) -> Result<KernelExpr, KernelError> {
    let e = KernelExpr::Conditional {
        child: Box::new(expr),
        given,
    };
    e.shape()?;
    Ok(e)
}

/// Pointwise ratio; the denominator's outcomes must be outcomes of the
/// numerator (they index the result's context).
pub fn ratio(num: KernelExpr, den: KernelExpr) -> Result<KernelExpr, KernelError> {
    let e = KernelExpr::Ratio {
        num: Box::new(num),
        den: Box::new(den),
    };
    e.shape()?;
    Ok(e)
}

/// Product of kernels; outcome sets must be pairwise disjoint.
pub fn product(children: Vec<KernelExpr>) -> Result<KernelExpr, KernelError> {
    let e = KernelExpr::Product { children };
    e.shape()?;
    Ok(e)
}

/// Restrict context variables of `expr` to the values in `at`. Keys of `at`
/// may be absent from the expression (the binding is then vacuous), but must
/// not be outcomes.
pub fn eval_at(expr: KernelExpr, at: Intervention) -> Result<KernelExpr, KernelError> {
    let e = KernelExpr::EvalAt {
        child: Box::new(expr),
        at,
    };
    e.shape()?;
    Ok(e)
}

/// Serialize an expression to its JSON schema.
pub fn expr_to_json_string(expr: &KernelExpr) -> String {
    serde_json::to_string_pretty(expr).expect("expression serialization cannot fail")
}

/// Parse an expression from its JSON schema, reporting line and column on
/// malformed input.
pub fn expr_from_json_str(text: &str) -> Result<KernelExpr, KernelError> {
    serde_json::from_str(text).map_err(|e| KernelError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}
