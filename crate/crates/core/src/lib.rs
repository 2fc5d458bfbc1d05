//! Exact integral lattices and the lattice-side verification of the
//! nonexistence of nontrivial finite-order symplectic automorphisms on
//! manifolds of type OG10.
//!
//! All pass/fail decisions are made in exact integer or rational
//! arithmetic. Matrices act on row vectors (`x -> x * M`) everywhere.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod discriminant;
pub mod error;
pub mod exact;
pub mod isometry;
pub mod lattice;
pub mod og10;
pub mod reduction;
pub mod report;

pub use error::{LatticeError, Result};
pub use exact::{IntMatrix, RatMatrix};
pub use lattice::{Lattice, LatticeVector, Sublattice};
pub use reduction::ShortVectorReport;
pub use report::{Check, VerificationReport};
