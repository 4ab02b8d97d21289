//! Exact invariants of flag bundles over curves.
//!
//! Given a reductive group G with a standard parabolic P, a strictly
//! antidominant character of P, and the slope data of a canonical reduction
//! to a parabolic Q, this crate computes, in exact rational arithmetic:
//!
//! - successive minima of the induced height function, indexed by the
//!   double cosets W_Q \ W / W_P, with cell dimensions and multiplicities;
//! - height filtrations and augmented base loci as unions of cells;
//! - Zhang-style minima and the variety height, the latter both as a
//!   weighted average over double cosets and as an average over W / W_P;
//! - for GL(n), an independent polytope oracle: the Gelfand-Zetlin polytope
//!   with its weight map, exact volumes, integrals of the concave transform,
//!   superlevel volumes and lattice point counts;
//! - movable-cone membership for polarized classes, cross-checked against
//!   the Zhang minima.
//!
//! There is no floating point anywhere: scalars are `num`-backed big
//! rationals and every comparison is exact.

pub mod cone;
pub mod error;
pub mod gz;
pub mod height;
pub mod hn;
mod linalg;
pub mod matrix;
pub mod polytope;
pub mod rational;
pub mod root_datum;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Rat;
