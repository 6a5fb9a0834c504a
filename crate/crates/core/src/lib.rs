//! Exact polytope geometry and Tverberg-type searches.
//!
//! Combinatorial code is generic over an exact [`Field`]; sphere and
//! subdivision code over a floating [`Real`]. The aliases below fix the
//! scalars used throughout the binaries.

pub mod error;
pub mod exact;
pub mod polytope;
pub mod scalar;
pub mod seed;
pub mod sphere;
pub mod tverberg;

pub use error::{Error, Result};
pub use scalar::{Field, Real};
pub use seed::SeedSplitter;

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
pub type QVector = exact::Vector<Rational>;
pub type LinSystem = exact::LinearSystem<Rational>;
pub type QPolytope = polytope::Polytope<Rational>;
pub type QLinearMap = tverberg::LinearMap<Rational>;
pub type QWitness = tverberg::TverbergWitness<Rational>;
pub type Frame = sphere::StiefelFrame<f64>;
