//! Exact parametric LMI solving.

pub mod arith;
pub mod bounds;
pub mod classify;
pub mod decide;
pub mod error;
pub mod formula;
pub mod groebner;
pub mod hermite;
pub mod incidence;
pub mod io;
pub mod linalg;
pub mod lmi;
pub mod scalar;
pub mod sign;
pub mod univariate;

pub use error::{Error, Result};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Polynomials with rational coefficients.
pub type Poly = arith::MultiPoly<Rational>;
