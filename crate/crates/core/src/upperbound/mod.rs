//! Upper bounds of exchange collections.
//!
//! Membership is decided directly from the definition: `W` is a member when it is a Laurent
//! polynomial and stays Laurent after `m_V(v)` mutations in every direction `v`. For the
//! three rank-two shapes with a known presentation there is an independent constructive
//! test that writes `W` as a polynomial in explicit generators.

mod generators;
mod identities;
mod property_v;
mod vlemma;

pub use generators::{
    detect_shape, generators_for, member_via_generators, member_via_sublattice, Decomposition,
    GeneratorPresentation, SeedShape, ShapeTag,
};
pub use identities::{printed_second_identity_holds, verify_ring_identities, RingIdentityReport};
pub use property_v::{
    check_property_v, check_property_v_fn, mutation_is_laurent, ub_member, DirectionResult,
    LaurentVerdict, LaurentWitness, MembershipReport,
};
pub use vlemma::{constructed_member, member_exponents, sample_ub_element, verify_vlemma, SampleSize, VLemmaCheck};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::lattice::LatticeVector;
use crate::mutation::MutationError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpperBoundError {
    #[error("unsupported seed shape: {0}")]
    UnsupportedShape(String),
    #[error("only rank 2 is supported here, got rank {0}")]
    NotRankTwo(usize),
    #[error("membership needs the base cluster (x1, ..., xr)")]
    NonBaseCluster,
    #[error("direction {0} is not in the exchange collection")]
    NotInCollection(LatticeVector),
    #[error(transparent)]
    Mutation(#[from] MutationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
