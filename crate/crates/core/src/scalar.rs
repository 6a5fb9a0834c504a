//! Scalar abstractions.
//!
//! Combinatorial geometry runs over an ordered [`Field`] (exact rationals in
//! practice); sphere and packing code runs over a [`Real`] float type.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssignRef, NumRef, Signed, ToPrimitive};

/// An ordered field with exact comparisons.
///
/// Implemented for [`BigRational`] and the fixed-width [`Ratio`] types. The
/// fixed-width ratios panic on overflow, so they are only suitable for tiny
/// instances; everything user-facing uses [`BigRational`].
pub trait Field:
    Num + NumRef + NumAssignRef + Signed + Clone + PartialOrd + Debug + Display + FromStr + ToPrimitive + Send + Sync
{
    /// Integer ring whose fractions make up the field.
    type Int: Integer + Signed + NumRef + NumAssignRef + Clone + Debug + Send + Sync;

    fn from_i64(value: i64) -> Self;

    /// Reduced numerator and positive denominator.
    fn to_parts(&self) -> (Self::Int, Self::Int);

    fn from_parts(numer: Self::Int, denom: Self::Int) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Smallest integer not below `self`.
    fn ceil(&self) -> Self;

    /// Canonical text form: `p/q`, or `p` when `q == 1`.
    fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    fn parse_canonical(text: &str) -> Option<Self> {
        Self::from_str(text.trim()).ok()
    }
}

impl Field for BigRational {
    type Int = BigInt;

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn to_parts(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }

    fn from_parts(numer: BigInt, denom: BigInt) -> Self {
        BigRational::new(numer, denom)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn ceil(&self) -> Self {
        Ratio::ceil(self)
    }
}

macro_rules! impl_fixed_ratio {
    ($int:ty) => {
        impl Field for Ratio<$int> {
            type Int = $int;

            fn from_i64(value: i64) -> Self {
                Ratio::from_integer(value as $int)
            }

            fn to_parts(&self) -> ($int, $int) {
                (*self.numer(), *self.denom())
            }

            fn from_parts(numer: $int, denom: $int) -> Self {
                Ratio::new(numer, denom)
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                Ratio::new(numer as $int, denom as $int)
            }

            fn ceil(&self) -> Self {
                Ratio::ceil(self)
            }
        }
    };
}

impl_fixed_ratio!(i64);
impl_fixed_ratio!(i128);

/// Floating point scalar for the numerical parts: f32 or f64.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Tolerance for unit norms and orthogonality.
    const UNIT_TOL: f64;

    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable")
    }
}

impl Real for f64 {
    const UNIT_TOL: f64 = 1e-12;
}

impl Real for f32 {
    const UNIT_TOL: f64 = 1e-5;
}
