//! Birational mutations, exchange collections, seeds and exchange matrices.

mod birational;
mod bmatrix;
mod collection;
mod seed;

pub use birational::{
    fn_mutate, fn_mutate_iter, fn_mutate_with, mutate_laurent, reflection_automorphism, Convention,
};
pub use bmatrix::{b_matrix, BMatrix};
pub use collection::{collection_mutate_ordered, ExchangeCollection};
pub use seed::{CSeed, SeedValidation, VSeed};

use thiserror::Error;

use crate::algebra::{AlgebraError, ExponentVector};
use crate::lattice::LatticeVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error("direction {0} is not in the exchange collection")]
    NotInCollection(LatticeVector),
    #[error(
        "denominator (1 + X^{direction}) pairs to {pairing} with the mutation vector; \
         its image is not a binomial"
    )]
    DenominatorNotInvariant { direction: ExponentVector, pairing: i64 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("index {index} out of range for {len} vectors")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("cluster must contain at least one function")]
    EmptyCluster,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
