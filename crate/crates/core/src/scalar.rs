//! Scalar traits the generic polynomial and matrix code is written against.
//!
//! Everything in this crate is exact. [`Ring`] is what determinants and
//! polynomial evaluation need; [`Field`] adds division and is what rank,
//! nullspace and inversion need. Any `num_rational::Ratio<T>` over a signed
//! integer type is a [`Field`], so `BigRational` (the default [`crate::Rat`])
//! and `Rational64` both work.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// Exact field of characteristic zero.
pub trait Field: Ring + Div<Output = Self> + Display {
    /// Sign used for normalisation: `-1`, `0` or `1`.
    fn signum_i32(&self) -> i32;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Converts an exact big rational, if representable.
    fn from_big_ratio(n: &BigInt, d: &BigInt) -> Option<Self>;
}

/// Integer types usable as numerator/denominator of a [`Field`] ratio.
pub trait IntScalar: Clone + Integer + Signed + Debug + Display {
    fn from_bigint(n: &BigInt) -> Option<Self>;
}

impl IntScalar for BigInt {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        Some(n.clone())
    }
}

macro_rules! prim_int_scalar {
    ($($t:ty),*) => {$(
        impl IntScalar for $t {
            fn from_bigint(n: &BigInt) -> Option<Self> {
                <$t>::try_from(n).ok()
            }
        }
    )*};
}
prim_int_scalar!(i32, i64, i128);

impl<T: IntScalar> Ring for Ratio<T> {
    fn from_i64(n: i64) -> Self {
        let v = T::from_bigint(&BigInt::from(n))
            .unwrap_or_else(|| panic!("{n} does not fit the scalar type"));
        Ratio::from_integer(v)
    }
}

impl<T: IntScalar> Field for Ratio<T> {
    fn signum_i32(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    fn from_big_ratio(n: &BigInt, d: &BigInt) -> Option<Self> {
        let n = T::from_bigint(n)?;
        let d = T::from_bigint(d)?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }
}
