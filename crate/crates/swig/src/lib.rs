//! Single-world intervention graphs (SWIGs).
//!
//! Splitting a graph `G` at an intervention `a` produces the world graph
//! `G(V(a))`: each intervened vertex `K` becomes a *random half* (keeping
//! every edge with an incoming arrowhead) and a *fixed half* labelled by the
//! assigned value (keeping the outgoing directed edges).  Latent projection
//! marginalizes random vertices out of a mixed graph while preserving the
//! directed and confounding structure among the survivors; the two
//! operations commute, which is what makes "marginal world graphs" like
//! `G(S(b))` well defined.

pub mod error;
pub mod project;
pub mod swig;
pub mod token;

pub use error::SwigError;
pub use project::{latent_project, marginal_swig};
pub use swig::{split, world_labels, ystar, Swig};
pub use token::{display_token, Intervention, ValueToken};
