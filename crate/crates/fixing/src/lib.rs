//! The fixing calculus on mixed graphs and kernels.
//!
//! *Fixing* a vertex turns it from a random variable into a context
//! variable, simultaneously pruning the graph and dividing the kernel by a
//! conditional — the inverse of one factor of the nested factorization.
//! This crate provides:
//!
//! * fixability tests and the single-vertex operators ([`is_fixable`],
//!   [`fix_graph`], [`fix_kernel`]);
//! * greedy whole-set fixing and sequence replay ([`fix_set`],
//!   [`fix_sequence`]);
//! * the selection-aware variants that keep a conditioned set intact
//!   ([`is_s_fixable`], [`s_fix_graph`], [`s_fix_kernel`],
//!   [`find_s_fixing_sequence`]);
//! * enumeration of all reachable sets with their intrinsic flags and
//!   witness sequences ([`enumerate_reachable`]).
//!
//! Kernel results are emitted as unsimplified [`kernel_algebra::KernelExpr`]
//! ratios; collapsing them into readable conditionals is
//! [`kernel_algebra::simplify`]'s job.

pub mod enumerate;
pub mod error;
pub mod fix;
pub mod sfix;

pub use enumerate::{
    enumerate_reachable, enumerate_reachable_with_limit, intrinsic_sets_with_witnesses,
    IntrinsicCatalog, ReachableSet, DEFAULT_ENUMERATION_LIMIT,
};
pub use error::FixError;
pub use fix::{
    fix_graph, fix_kernel, fix_sequence, fix_set, is_fixable, FixSetOutcome, FixingSequence,
};
pub use sfix::{
    find_s_fixing_sequence, is_s_fixable, s_fix_graph, s_fix_kernel, s_fix_sequence,
};
