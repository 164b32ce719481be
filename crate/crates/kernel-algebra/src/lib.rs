//! Symbolic kernel algebra over user-declared input distributions.
//!
//! This crate provides the expression language the identification algorithms
//! emit ([`KernelExpr`]), together with:
//!
//! - shape bookkeeping that distinguishes outcome variables from observed and
//!   world (intervention-indexed) context variables;
//! - exact dense evaluation against registered probability tables
//!   ([`evaluate`]), with `0/0` resolved to 0 and flagged, and hard division
//!   by zero reported as a positivity error naming the offending slice;
//! - structural simplification by safe rewrites ([`simplify`]);
//! - deterministic text, LaTeX, and JSON rendering ([`render`]).
//!
//! Tables align columns by variable name. A symbolically intervened variable
//! contributes a context column *named by that variable*, so kernels from
//! different interventional worlds and tables of ground-truth queries join
//! and compare coherently.

mod error;
mod eval;
mod expr;
mod render;
mod simplify;
mod table;

pub use error::KernelError;
pub use eval::{evaluate, EvalOutcome};
pub use expr::{
    condition, eval_at, expr_from_json_str, expr_to_json_string, marginalize, product, ratio,
    DistRef, KernelExpr, Shape,
};
pub use render::{render, RenderFormat};
pub use simplify::simplify;
pub use table::TabularDist;
