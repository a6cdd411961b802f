//! Exact homological algebra for the enveloping homotopy algebras of a
//! finite-dimensional graded algebra.
//!
//! Every complex is built from structure constants over an exact field
//! (rationals by default) so that ranks, homology dimensions and structure
//! identities are decided without tolerance.

pub mod algebras;
pub mod bar;
pub mod chain;
pub mod chevalley;
pub mod ginfty;
pub mod graded;
pub mod harrison;
pub mod koszul;
pub mod linalg;
pub mod scalar;
pub mod selftest;

pub use scalar::Scalar;

/// Exact rational numbers, the default field.
pub type Q = num_rational::BigRational;

pub type QSparseMap = linalg::SparseMap<Q>;
pub type QSubspace = linalg::Subspace<Q>;
pub type QAlgebra = algebras::AlgebraPresentation<Q>;
pub type QModule = algebras::ModulePresentation<Q>;
