//! The coefficient field: Gaussian rationals, sparse multivariate
//! polynomials under a fixed graded-lex order, and their fraction field.
//!
//! There is deliberately no multivariate GCD here. Fractions compare by
//! cross-multiplication and are simplified only by exact single-divisor
//! reduction, which is all the hypersurface checks need.

mod fraction;
mod gaussian;
mod parse;
mod poly;

pub use fraction::ExactScalar;
pub use gaussian::GaussianRational;
pub use parse::{parse_constant, parse_poly, parse_scalar, Ast, ParseError, Token, Tokenizer};
pub use poly::{reduce_single_divisor, Monomial, Poly};

use thiserror::Error;

use crate::chart::Var;

/// Errors from scalar-level arithmetic and evaluation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the sample point")]
    DenominatorVanishes,
    #[error("no value assigned to variable {0}")]
    MissingAssignment(Var),
    #[error("zero has no inverse")]
    ZeroInverse,
}
