//! Exact subspace algebra over small prime fields, a coordination
//! calculus for families of subspaces, and audits for linear
//! coded-caching schemes built on both.
//!
//! Layering, bottom up:
//! - [`field`] / [`linalg`]: GF(p) scalars and dense row-oriented
//!   matrices (bit-packed for p = 2).
//! - [`subspace`]: canonical row-space representatives and lattice
//!   operations (sum, intersection, quotients, independence).
//! - [`coord`]: discoordination measures, greedy minimizers, structure
//!   theorems for three-subspace families.
//! - [`caching`]: broadcast-scheme modelling, rate/memory accounting,
//!   and the lower-bound audits.
//!
//! All arithmetic is exact; rational quantities use `num_rational`.

pub mod coord;
pub mod error;
pub mod field;
pub mod linalg;
pub mod sampling;
pub mod subspace;

pub use error::{Error, Result};
pub use field::Field;
pub use linalg::{Matrix, Rref, Vector};
pub use sampling::Sampler;
pub use subspace::{Decomposition, QuotientMap, Subspace, SubspaceFamily};
