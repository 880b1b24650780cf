//! Exact constructions and verification for the unitary generators of the
//! real K-theory of spheres carrying the antipodal involution.
//!
//! The crate builds the standard and symmetry-adapted families of
//! anticommuting self-adjoint unitaries, assembles the canonical sphere
//! pencils `Q` and `U` from them, classifies pencils against the symmetry
//! rows of the unitary picture of the K-groups (all decisions are exact,
//! over dyadic Gaussian rationals), tabulates the K-groups themselves, and
//! certifies the low-dimensional generators with numerical winding and
//! Chern invariants.

pub mod clifford;
pub mod cmat;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod involutions;
pub mod kgroups;
pub mod pencil;
pub mod tables;

pub use error::{Error, Result};
pub use exact::{Dyadic, ExactMatrix};
