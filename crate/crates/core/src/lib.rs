//! Bethe algebras of gl_N Gaudin models and the Schubert-cell geometry of
//! Wronski fibers.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: scalars, polynomials, rational functions, differential
//!   operators, row determinants, Wronskians, indicial polynomials.
//! * [`rep`]: matrix realizations of gl_N and gl_N[t] modules, singular
//!   subspaces, the central element Z(x), graded characters.
//! * [`bethe`]: the universal differential operator, its restriction to
//!   singular weight spaces and the joint spectrum.
//! * [`schubert`]: cell charts, the Wronski map, fundamental operators,
//!   exponents, fibers and data normalization.
//! * [`verify`]: bundled check suites, JSON documents and the CLI.

pub mod algebra;
pub mod bethe;
pub mod rep;
pub mod schubert;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("empty input")]
    EmptyInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("evaluation at a pole")]
    Pole,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-integral exponent")]
    NonIntegralExponent,
    #[error("non-generic combination: {0}")]
    NonGeneric(String),
    #[error("not a joint eigenvector (residual {0:e})")]
    NotJointEigenvector(f64),
    #[error("dimension guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
