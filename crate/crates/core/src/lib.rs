//! Bar-Natan and α-homology of links from planar diagram codes.
//!
//! The crate builds the cube-of-resolutions complex of a diagram for a
//! rank-two Frobenius system, computes its homology over a graded PID by
//! monomial Gaussian elimination, extracts torsion orders, and evaluates
//! cobordism movies to chain maps so that relations between cobordisms can
//! be checked on homology.
//!
//! Everything is generic over the coefficient type through [`Coefficient`];
//! the aliases below name the instances used in practice.

pub mod cobordism;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod frobenius;
pub mod homology;
pub mod knots;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;

pub use complex::{ChainComplex, ChainMap, Generator};
pub use diagram::{parse_pd, LinkDiagram, Resolution, State};
pub use error::{Error, Result};
pub use frobenius::{AlgebraElement, AnyTheory, Decoration, Theory};
pub use homology::{Homology, HomologyMap, HomologySummary};
pub use poly::Poly;
pub use scalar::{Coefficient, Fp};

/// The field with two elements.
pub type F2 = Fp<2>;
/// The field with three elements.
pub type F3 = Fp<3>;
/// Rational numbers.
pub type Q = num_rational::Rational64;
/// Machine integers, used for the two-variable α ring.
pub type Z = i64;

/// Bar-Natan theory over 𝔽₂[h].
pub type BarNatan = Theory<F2>;
/// α-theory over ℤ[α₁, α₂].
pub type AlphaTheory = Theory<Z>;
