//! Exact arithmetic foundation: rationals, sparse multivariate polynomials,
//! rational functions, univariate factorization and dense linear algebra.
//!
//! Nothing in this crate uses floating point.

mod field;
mod gcd;
mod matrix;
mod monomial;
mod poly;
mod ratfunc;
mod upoly;

use thiserror::Error;

pub use field::Field;
pub use gcd::{content_in, gcd, lcm};
pub use matrix::{canonical_span_basis, char_poly, nullspace, rational_eigen, EigenReport, ExactMatrix};
pub use monomial::{Monomial, TermOrder};
pub use poly::{poly_arith, MultiPoly, PolyOp};
pub use ratfunc::RatFunc;
pub use upoly::UniPoly;

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational literals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("signature mismatch: {left} vs {right} variables")]
    SignatureMismatch { left: usize, right: usize },
    #[error("division is not exact")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
}
