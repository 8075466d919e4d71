//! Exact scalars: rationals, the extension Q(s, i), half-power polynomials and Laurent polynomials.

mod halfpoly;
mod laurent;
pub mod rat;
mod ring;
mod scalar;

use thiserror::Error;

pub use halfpoly::{halfpoly_mul, HalfPowerPoly};
pub use laurent::{laurent_interpolate, LaurentFit, LaurentPoly};
pub use rat::Rat;
pub use ring::Ring;
pub use scalar::{bracket, scalar_arith, ArithOp, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("bracket of zero")]
    ZeroInverse,
    #[error("scalars carry different session constants")]
    SessionMismatch,
    #[error("{0} is a zero divisor")]
    NotInvertible(String),
    #[error("polynomial has odd powers of y")]
    OddSupport,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("non-integer coefficient")]
    NonIntegerCoefficient,
    #[error("interpolation system is singular")]
    SingularSystem,
    #[error("surplus sample does not fit the assumed support")]
    InconsistentSamples,
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}
