//! Exact arithmetic: rationals, Laurent polynomials and binomial-denominator rational
//! functions.

mod divide;
mod exponent;
mod laurent;
mod ratfn;
mod rational;

pub use divide::{binomial_divide, is_divisible_up_to_unit, BinomialDivision, RemainderWitness};
pub use exponent::ExponentVector;
pub use laurent::LaurentPoly;
pub use ratfn::{BinomialRationalFn, NotLaurent};
pub use rational::{rat, rational_pow, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("binomial direction must be nonzero")]
    ZeroDirection,
    #[error("binomial exponent must be positive")]
    ZeroExponent,
    #[error("content of the zero polynomial is undefined")]
    ZeroContent,
    #[error("evaluation point has a zero coordinate at position {0}")]
    ZeroCoordinate(usize),
    #[error("denominator vanishes at the evaluation point")]
    VanishingDenominator,
    #[error("substitution matrix is singular")]
    SingularMatrix,
    #[error("substitution matrix has shape {rows}x{cols}, expected {rank}x{rank}")]
    MatrixShape { rows: usize, cols: usize, rank: usize },
}
