//! The coefficient ring abstraction shared by the exact arithmetic types.
//!
//! Everything public is instantiated at [`BigInt`]; the determinant hot path
//! also runs the same code at `i128` when the input height makes that safe.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, ToPrimitive};

pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

/// Residue of `v` in `0..m`.
pub(crate) fn residue(v: &BigInt, m: u64) -> u64 {
    v.mod_floor(&BigInt::from(m)).to_u64().expect("residue below modulus")
}
