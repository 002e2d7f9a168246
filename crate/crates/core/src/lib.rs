//! Exact analysis of supermodular games on finite distributive lattices.
//!
//! A poset of players determines the lattice of its down-sets; games are
//! functions on that lattice vanishing at the empty coalition. The crate
//! builds the lattice, evaluates Möbius transforms, marginal vectors and
//! cores, decides extremality in the cone of supermodular games, and
//! enumerates the cone's facets and extreme rays. All arithmetic is exact.
//!
//! The core is generic over [`Scalar`], implemented for `num_rational::Ratio`
//! over any signed integer; [`Rational`] (arbitrary precision) is the default.

pub mod cone;
pub mod error;
pub mod game;
pub mod lattice;
pub mod marginals;
pub mod poset;
pub mod qlin;
pub mod scalar;

pub use cone::{
    cone_dimension, equality_pairs, extreme_rays, face_compare, facet_triples, is_extreme,
    is_extreme_via_games, EqualityPair, ExtremalityMethod, FaceRelation, FacetTriple,
};
pub use error::{Error, Result};
pub use game::Game;
pub use lattice::{build_lattice, build_lattice_with, DownSetLattice, Limits, MaximalChain, Permutation};
pub use marginals::{PayoffVector, PointConfiguration};
pub use poset::{Coalition, Poset};
pub use qlin::{Matrix, RowSpace};
pub use scalar::{parse_scalar, Scalar};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Rationals over `i64`, for small inputs where overflow is ruled out.
pub type Rational64 = num_rational::Rational64;

pub type RatMatrix = Matrix<Rational>;
pub type RatGame = Game<Rational>;
pub type RatPayoff = PayoffVector<Rational>;
pub type RatConfiguration = PointConfiguration<Rational>;
pub type Game64 = Game<Rational64>;
