//! Cellular and simplicial models of the complexity filtration of an
//! E-infinity operad, with exact integral homology.
//!
//! The crate is organised bottom up:
//!
//! * [`combinat`] label maps, diagrams, complexity and the pairwise order invariant;
//! * [`berger`] the poset of pairwise bounds and orders, its operad structure and nerve;
//! * [`xi`] normal forms of simplices of the diagram model and the finite simplicial model;
//! * [`homology`] sparse chain complexes, Smith normal form, integral homology;
//! * [`cochains`] cochains on finite simplicial sets, cup and join products, the
//!   multiplicative operations indexed by label maps;
//! * [`brace`] the cosimplicial object attached to an operad with multiplication;
//! * [`prism`] exact barycentric geometry of the diagram model;
//! * [`verify`] the exhaustive and randomised check suites.
//!
//! Exact scalars are generic over `num-traits`; the aliases below fix the
//! concrete types used by the command line front end.

pub mod berger;
pub mod brace;
pub mod cochains;
pub mod combinat;
pub mod error;
pub mod homology;
pub mod perm;
pub mod prism;
pub mod scalar;
pub mod verify;
pub mod xi;

pub use error::{Error, Result};

/// Arbitrary precision integers, the fallback ring for elimination.
pub type Int = num_bigint::BigInt;
/// Exact rationals used for barycentric coordinates.
pub type Rational = num_rational::BigRational;
/// Smith normal form over arbitrary precision integers.
pub type SmithForm = homology::snf::SmithNormalForm<Int>;
/// A coordinate pair of the diagram model with exact coordinates.
pub type RationalPairPoint = prism::PairPoint<Rational>;
