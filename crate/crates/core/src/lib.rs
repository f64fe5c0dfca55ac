//! Exact computations with Poisson structures on (Laurent) polynomial rings.
//!
//! The kernel works over any exact coefficient field implementing [`Field`]
//! (arbitrary precision rationals and `i64` rationals are provided). Every
//! generic type lives in its module; the crate root re-exports concrete
//! aliases over [`Rational`], which is what the command line driver uses.
//!
//! The main entry points:
//!
//! * [`poly`] and [`parse`]: sparse Laurent polynomials in canonical form,
//!   exact division, derivatives, an expression grammar and its renderer.
//! * [`poisson`] and [`derivation`]: brackets given by a matrix of generator
//!   brackets, Jacobi verification, derivations given by generator images.
//! * [`normality`]: Poisson normal elements and their weights, certification
//!   of the abelian weight property, weight-space decomposition and the
//!   homogeneous-element extraction for Poisson ideals.
//! * [`casimir`]: Casimir and rational-Casimir tests, algebraic relations and
//!   the monomial-in-ideal procedure.
//! * [`lie`]: symmetric algebras of Lie algebras and their semi-invariants.

#![allow(clippy::needless_range_loop)]

pub mod casimir;
pub mod derivation;
pub mod error;
pub mod field;
pub mod linalg;
pub mod lie;
pub mod monomial;
pub mod normality;
pub mod parse;
pub mod poisson;
pub mod poly;
pub mod signature;

pub use error::{Error, Result};
pub use field::Field;
pub use monomial::Monomial;
pub use signature::Signature;

/// Arbitrary precision rationals, the default coefficient field.
pub type Rational = num_rational::BigRational;
/// Machine-word rationals. Cheaper, but arithmetic panics on overflow.
pub type Rational64 = num_rational::Rational64;

pub type Polynomial = poly::Polynomial<Rational>;
pub type PoissonAlgebra = poisson::PoissonAlgebra<Rational>;
pub type Derivation = derivation::Derivation<Rational>;
pub type JacobiFailure = poisson::JacobiFailure<Rational>;
pub type GpaCertificate = normality::GpaCertificate<Rational>;
pub type WeightDecomposition = normality::WeightDecomposition<Rational>;
pub type HomogenizationTrace = normality::HomogenizationTrace<Rational>;
pub type RelationPolynomial = casimir::RelationPolynomial<Rational>;
pub type MonomialCertificate = casimir::MonomialCertificate<Rational>;
pub type LieAlgebra = lie::LieAlgebra<Rational>;
pub type Character = lie::Character<Rational>;
pub type SemiInvariantSpace = lie::SemiInvariantSpace<Rational>;
pub type Matrix = linalg::Matrix<Rational>;

pub type Polynomial64 = poly::Polynomial<Rational64>;
pub type PoissonAlgebra64 = poisson::PoissonAlgebra<Rational64>;
