//! Scalar traits the generic polynomial and matrix code is written against.
//!
//! Everything that decides a verdict runs over [`BigInt`] or [`BigRational`].
//! The wrapping machine integers are rings too (ℤ/2^8, ℤ/2^32, ℤ/2^64), which lets
//! division-free algorithms such as the Berkowitz characteristic polynomial
//! produce exact residues cheaply.

use std::fmt::Debug;
use std::num::Wrapping;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with identity.
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
    fn from_i64(v: i64) -> Self;
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for BigRational {}

impl Ring for Wrapping<u8> {
    fn from_i64(v: i64) -> Self {
        Wrapping(v as u8)
    }
}

impl Ring for Wrapping<u32> {
    fn from_i64(v: i64) -> Self {
        Wrapping(v as u32)
    }
}

impl Ring for Wrapping<u64> {
    fn from_i64(v: i64) -> Self {
        Wrapping(v as u64)
    }
}

impl Ring for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}
