//! Deciding causal effects from heterogeneous input distributions.
//!
//! Given an acyclic directed mixed graph and a collection of input
//! distributions — interventional joints, arbitrary margins, or
//! conditional slices, each tagged with the intervention that generated
//! it — this crate decides whether a target `p(Y(a))` can be expressed in
//! terms of the inputs, and if so emits the expression together with a
//! per-district provenance trail.
//!
//! Five criteria of increasing generality are exposed, each demanding less
//! of the input collection:
//!
//! | entry point    | inputs accepted                                   |
//! |----------------|---------------------------------------------------|
//! | [`id_classic`] | the observational joint alone                     |
//! | [`g_id`]       | full joints of interventional worlds              |
//! | [`a_id`]       | ancestral margins of interventional worlds        |
//! | [`m_id`]       | arbitrary unconditional margins                   |
//! | [`e_id`]       | margins and conditional slices, mixed freely      |
//!
//! [`identify_auto`] inspects the collection and dispatches to the least
//! general criterion whose contract it satisfies; [`selection_id`] handles
//! a single conditional input directly.
//!
//! Every decision is constructive.  An `Identified` result carries a
//! [`KernelExpr`](kernel_algebra::KernelExpr) that bottoms out in the raw
//! input tables, the margin `Y′` the districts were read from, and one
//! [`DistrictRecord`] per district naming the input used and the fixing
//! sequence replayed on it — enough to re-derive the formula step by step.
//! The two complete criteria ([`id_classic`], [`g_id`]) refute with a
//! witness district; the others report `Unknown` on exhaustion since their
//! completeness is open.  Conditional inputs are first saturated under
//! conditioning upgrades (justified by m-separation certificates) and
//! chain-rule compositions; the derivation log of that closure accompanies
//! the result.

mod aid;
mod auto;
mod classic;
mod closure;
mod eid;
mod error;
mod gid;
mod input;
mod mid;
mod result;
mod selection;
mod world;

pub use aid::a_id;
pub use auto::{choose_algorithm, identify_auto, Algorithm};
pub use classic::id_classic;
pub use closure::{
    chain_rule_close, ClosedInput, Closure, InputOrigin, DEFAULT_CLOSURE_ROUNDS,
};
pub use eid::e_id;
pub use error::IdentError;
pub use gid::g_id;
pub use input::{number_inputs, InputDist, Query};
pub use mid::m_id;
pub use result::{AttemptRecord, DistrictRecord, IdentResult, Status};
pub use selection::selection_id;
pub use world::MARGIN_SEARCH_LIMIT;
