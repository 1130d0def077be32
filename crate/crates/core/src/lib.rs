//! Exact mutations of potentials on lattices with a skew form.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`] – rationals, sparse Laurent polynomials and rational functions whose
//!   denominators are products of binomials `(1 + X^a)^e`.
//! * [`lattice`] – lattice vectors, skew forms, piecewise-linear mutations and basis
//!   machinery.
//! * [`mutation`] – birational mutations, exchange collections, seeds and the
//!   exchange-matrix bridge to classical cluster algebras.
//! * [`upperbound`] – property (V), upper-bound membership, generator presentations for
//!   the rank-two shapes and the mutation-invariance checks.
//! * [`io`] – expression and seed-file parsing, orbit exploration, report records.
//! * [`verify`] – deterministic property suites shared by the CLI and the tests.

pub mod algebra;
pub mod io;
pub mod lattice;
pub mod mutation;
pub mod random;
pub mod upperbound;
pub mod verify;

pub use algebra::{
    BinomialDivision, BinomialRationalFn, ExponentVector, LaurentPoly, Rational, RemainderWitness,
};
pub use lattice::{IntMatrix, LatticeMap, LatticeVector, SkewForm};
pub use mutation::{BMatrix, CSeed, ExchangeCollection, VSeed};
pub use upperbound::{check_property_v, generators_for, ub_member, MembershipReport};

