//! Numeric abstraction shared by every game, value and checker.
//!
//! All formulas in this crate only need field operations plus a way to lift
//! small integers (player counts, factorials) into the scalar type. The exact
//! instance is [`BigRational`]; the float instances exist for callers that
//! want fast approximate payoffs and are never used by the axiom checkers.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Num
    + Neg<Output = Self>
    + Sum
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    /// Lifts a machine integer into the scalar type.
    fn from_int(value: i64) -> Self;

    /// True when arithmetic never rounds.
    fn is_exact() -> bool;

    fn from_count(count: usize) -> Self {
        Self::from_int(i64::try_from(count).expect("count fits in i64"))
    }

    /// `numer / denom` computed in the scalar type.
    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }
}

impl Scalar for BigRational {
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f32 {
    fn from_int(value: i64) -> Self {
        value as f32
    }

    fn is_exact() -> bool {
        false
    }
}
