//! Exact arithmetic over the rationals: canonical rationals, dense
//! polynomials, squarefree decomposition and rational-root extraction.

mod factor;
mod poly;
mod rat;

pub use factor::{
    rational_roots, squarefree_decomposition, squarefree_part, RationalRoots, SquarefreeFactor,
};
pub use poly::{Degree, FactoredSplit, Poly};
pub use rat::{rat, ParseRatError, Rat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("operation requires a nonconstant polynomial")]
    ConstantInput,
    #[error("operation requires a nonzero polynomial")]
    ZeroInput,
    #[error("repeated root in factored form")]
    RepeatedRoot,
    #[error("zero multiplicity in factored form")]
    ZeroMultiplicity,
}
