//! Deterministic rendering of kernel expressions as text, LaTeX, or JSON.
//!
//! Text and LaTeX renderings are built from the same intermediate display
//! tree. Input references print in probability notation with world
//! annotations taken from their display labels (`p(Y(x_2) | W)`); the
//! JSON format is the expression schema itself and parses back to an equal
//! expression.
//!
//! World annotations come exclusively from each reference's `labels` map —
//! the caller is responsible for populating it (the identification pipeline
//! does so from the interventions the referenced world was built under).

use graph_core::{VertexId, VertexSet};
use swig::{display_token, ValueToken};

use crate::expr::{expr_to_json_string, DistRef, KernelExpr};

/// Output format for [`render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Latex,
    Json,
}

/// Render an expression deterministically in the requested format.
pub fn render(expr: &KernelExpr, format: RenderFormat) -> String {
    match format {
        RenderFormat::Json => expr_to_json_string(expr),
        RenderFormat::Text => print(&build(expr), Mode::Text),
        RenderFormat::Latex => print(&build(expr), Mode::Latex),
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Text,
    Latex,
}

/// One displayed variable: name, world annotation, optional pinned value.
#[derive(Clone)]
struct VarDisp {
    id: VertexId,
    labels: Vec<ValueToken>,
    value: Option<ValueToken>,
}

enum Disp {
    /// Probability form `p(scope | given)`.
    P {
        scope: Vec<VarDisp>,
        given: Vec<VarDisp>,
    },
    Sum {
        vars: Vec<VertexId>,
        body: Box<Disp>,
    },
    Frac {
        num: Box<Disp>,
        den: Box<Disp>,
    },
    Prod {
        factors: Vec<Disp>,
    },
    At {
        body: Box<Disp>,
        bindings: Vec<(VertexId, ValueToken)>,
    },
    One,
}

fn var_disp(d: &DistRef, v: &VertexId, pinned_value: Option<ValueToken>) -> VarDisp {
    VarDisp {
        id: v.clone(),
        labels: d.labels.get(v).cloned().unwrap_or_default(),
        value: pinned_value,
    }
}

fn build(expr: &KernelExpr) -> Disp {
    match expr {
        KernelExpr::Base { dist } => Disp::P {
            scope: dist
                .scope
                .iter()
                .map(|v| var_disp(dist, v, None))
                .collect(),
            given: dist
                .given
                .iter()
                .map(|v| {
                    let value = dist.pinned.as_ref().and_then(|p| p.get(v)).cloned();
                    var_disp(dist, v, value)
                })
                .collect(),
        },
        KernelExpr::Marginal { child, sum_out } => match build(child) {
            // Summing outcomes out of a probability form yields the smaller
            // probability form.
            Disp::P { scope, given } => Disp::P {
                scope: scope
                    .into_iter()
                    .filter(|v| !sum_out.contains(&v.id))
                    .collect(),
                given,
            },
            other => Disp::Sum {
                vars: sum_out.iter().cloned().collect(),
                body: Box::new(other),
            },
        },
        KernelExpr::Conditional { child, given } => match build(child) {
            Disp::P {
                scope,
                given: given0,
            } => {
                let (moved, kept): (Vec<_>, Vec<_>) =
                    scope.into_iter().partition(|v| given.contains(&v.id));
                let mut new_given = given0;
                new_given.extend(moved);
                new_given.sort_by(|a, b| a.id.cmp(&b.id));
                Disp::P {
                    scope: kept,
                    given: new_given,
                }
            }
            // No probability form available: show the defining ratio.
            other => {
                let out = child
                    .shape()
                    .map(|s| s.outcomes)
                    .unwrap_or_default();
                let dropped: VertexSet = out.difference(given).cloned().collect();
                if dropped.is_empty() {
                    other
                } else {
                    Disp::Frac {
                        num: Box::new(other),
                        den: Box::new(Disp::Sum {
                            vars: dropped.into_iter().collect(),
                            body: Box::new(build(child)),
                        }),
                    }
                }
            }
        },
        KernelExpr::Ratio { num, den } => Disp::Frac {
            num: Box::new(build(num)),
            den: Box::new(build(den)),
        },
        KernelExpr::Product { children } => {
            if children.is_empty() {
                Disp::One
            } else {
                Disp::Prod {
                    factors: children.iter().map(build).collect(),
                }
            }
        }
        KernelExpr::EvalAt { child, at } => Disp::At {
            body: Box::new(build(child)),
            bindings: at.iter().map(|(v, t)| (v.clone(), t.clone())).collect(),
        },
    }
}

/// Token display, LaTeX-bracing the subscript where present.
fn token(t: &ValueToken, mode: Mode) -> String {
    let s = display_token(t);
    match mode {
        Mode::Text => s,
        Mode::Latex => match s.split_once('_') {
            Some((head, sub)) => format!("{head}_{{{sub}}}"),
            None => s,
        },
    }
}

fn var(v: &VarDisp, mode: Mode) -> String {
    let mut s = v.id.to_string();
    if !v.labels.is_empty() {
        let toks: Vec<String> = v.labels.iter().map(|t| token(t, mode)).collect();
        s.push('(');
        s.push_str(&toks.join(", "));
        s.push(')');
    }
    if let Some(value) = &v.value {
        s.push_str(" = ");
        s.push_str(&token(value, mode));
    }
    s
}

fn var_list(vs: &[VarDisp], mode: Mode) -> String {
    vs.iter().map(|v| var(v, mode)).collect::<Vec<_>>().join(", ")
}

/// Does this display need parentheses when used as a product factor or a
/// textual fraction operand?
fn composite(d: &Disp) -> bool {
    !matches!(d, Disp::P { .. } | Disp::One)
}

fn print(d: &Disp, mode: Mode) -> String {
    match d {
        Disp::One => "1".into(),
        Disp::P { scope, given } => {
            if scope.is_empty() && given.is_empty() {
                return "1".into();
            }
            let mut s = String::from("p(");
            s.push_str(&var_list(scope, mode));
            if !given.is_empty() {
                s.push_str(match mode {
                    Mode::Text => " | ",
                    Mode::Latex => " \\mid ",
                });
                s.push_str(&var_list(given, mode));
            }
            s.push(')');
            s
        }
        Disp::Sum { vars, body } => {
            let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
            let body_s = print(body, mode);
            match mode {
                Mode::Text => {
                    if names.len() == 1 {
                        format!("Σ_{} {}", names[0], body_s)
                    } else {
                        format!("Σ_{{{}}} {}", names.join(","), body_s)
                    }
                }
                Mode::Latex => format!("\\sum_{{{}}} {}", names.join(", "), body_s),
            }
        }
        Disp::Frac { num, den } => match mode {
            Mode::Text => {
                let n = parenthesized(num, mode);
                let d = parenthesized(den, mode);
                format!("{n} / {d}")
            }
            Mode::Latex => format!("\\frac{{{}}}{{{}}}", print(num, mode), print(den, mode)),
        },
        Disp::Prod { factors } => {
            let parts: Vec<String> = factors.iter().map(|f| parenthesized(f, mode)).collect();
            match mode {
                Mode::Text => parts.join(" "),
                Mode::Latex => parts.join(" \\, "),
            }
        }
        Disp::At { body, bindings } => {
            let body_s = print(body, mode);
            let binds: Vec<String> = bindings
                .iter()
                .map(|(v, t)| format!("{v} = {}", token(t, mode)))
                .collect();
            match mode {
                Mode::Text => format!("{} |_{{{}}}", body_s, binds.join(", ")),
                Mode::Latex => {
                    format!("\\left. {} \\right|_{{{}}}", body_s, binds.join(", "))
                }
            }
        }
    }
}

fn parenthesized(d: &Disp, mode: Mode) -> String {
    let s = print(d, mode);
    if composite(d) {
        match mode {
            Mode::Text => format!("({s})"),
            Mode::Latex => format!("\\left( {s} \\right)"),
        }
    } else {
        s
    }
}
