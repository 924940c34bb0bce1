//! Exact computations for connected cochain DG free algebras.
//!
//! The crate builds the differential of a DG free algebra from a crisscross
//! matrix tuple, computes cohomology degree by degree, certifies semi-free
//! resolutions of the trivial module, extracts Ext-algebras and their
//! automorphism groups, and compares the resulting derived Picard invariants.
//!
//! All algorithms are generic over [`Field`]; the aliases below fix the
//! common choices.

pub mod aut;
pub mod cohomology;
pub mod dg;
pub mod error;
pub mod ext;
pub mod free_algebra;
pub mod linalg;
pub mod picard;
pub mod scalar;
pub mod semifree;
pub mod symbolic;

pub use error::{Error, Result};
pub use scalar::{Field, FieldKind, Fp, Rational};

pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

pub type QMatrix = linalg::Matrix<Rational>;
pub type QElement = free_algebra::GradedElement<Rational>;
pub type QAlgebra = dg::DgFreeAlgebra<Rational>;
