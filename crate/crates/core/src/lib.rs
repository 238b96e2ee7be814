//! Exact computations in weighted commutative nonassociative algebras over Q.
//!
//! The crate covers backcrossing algebras (weighted algebras satisfying
//! `x²x² − 2ω(x)x³ + ω(x)²x² = 0`), the mutation algebras generated by their
//! weight-1 elements, the reduction of one-variable nonassociative identities
//! to polynomials in the mutation operator, and the resulting idempotent
//! criterion.

pub mod algebra;
pub mod backcross;
pub mod cli;
pub mod error;
pub mod idempotent;
pub mod magma;
pub mod mutation;
pub mod samples;
pub mod scalar;
pub mod theta;

pub use algebra::{Element, WeightedAlgebra};
pub use error::{Error, Result};
pub use magma::{MagmaPoly, MagmaTerm};
pub use scalar::{QMatrix, Rational, UniPoly};
