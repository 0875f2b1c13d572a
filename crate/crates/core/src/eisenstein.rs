//! Exact arithmetic in the Eisenstein integers ℤ[ω], ω² + ω + 1 = 0.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `a + bω` with coordinates in the {1, ω} basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Eisenstein<T = BigInt> {
    pub a: T,
    pub b: T,
}

pub type EisensteinInt = Eisenstein<BigInt>;

impl<T: Scalar> Eisenstein<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn omega() -> Self {
        Self::new(T::zero(), T::one())
    }

    /// `ω^e` for any integer exponent.
    pub fn omega_pow(e: i64) -> Self {
        match e.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::omega(),
            _ => Self::new(-T::one(), -T::one()),
        }
    }

    /// Image under ω ↦ ω² (complex conjugation): `(a − b) − bω`.
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone() - self.b.clone(), -self.b.clone())
    }

    /// `a² − ab + b²`.
    pub fn norm(&self) -> T {
        let (a, b) = (&self.a, &self.b);
        a.clone() * a.clone() - a.clone() * b.clone() + b.clone() * b.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Builds the element from coefficients of 1, ω, ω².
    pub fn from_powers(c0: T, c1: T, c2: T) -> Self {
        Self::new(c0 - c2.clone(), c1 - c2)
    }
}

impl<T: Scalar> Add for Eisenstein<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<T: Scalar> Sub for Eisenstein<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<T: Scalar> Neg for Eisenstein<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<T: Scalar> Mul for Eisenstein<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let bd = self.b.clone() * rhs.b.clone();
        let a = self.a.clone() * rhs.a.clone() - bd.clone();
        let b = self.a * rhs.b + self.b * rhs.a - bd;
        Self::new(a, b)
    }
}

impl<'a, T: Scalar> Mul<&'a Eisenstein<T>> for &'a Eisenstein<T> {
    type Output = Eisenstein<T>;
    fn mul(self, rhs: &Eisenstein<T>) -> Eisenstein<T> {
        self.clone() * rhs.clone()
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}ω", self.a, -&self.b)
        } else {
            write!(f, "{}+{}ω", self.a, self.b)
        }
    }
}

impl From<(i64, i64)> for EisensteinInt {
    fn from((a, b): (i64, i64)) -> Self {
        Self::new(BigInt::from(a), BigInt::from(b))
    }
}

/// `ω^j (A + 3Bω)` with `3 ∤ A` and `A`, `B` not both even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    /// Exponent `j` of the unit ω^j, in {0, 1, 2}.
    pub unit_exp: u8,
    pub a: BigInt,
    pub b: BigInt,
}

impl NormalForm {
    /// Multiplies the form back out.
    pub fn reconstruct(&self) -> EisensteinInt {
        let core = EisensteinInt::new(self.a.clone(), BigInt::from(3) * &self.b);
        EisensteinInt::omega_pow(self.unit_exp as i64) * core
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

fn coprime_to_six(x: &EisensteinInt) -> Result<()> {
    let n = x.norm();
    if n.gcd(&BigInt::from(6)).is_one() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "normal form needs gcd(N(α), 6) = 1, but N({x}) = {n}"
        )))
    }
}

/// Writes `x` as `ω^j (A + 3Bω)`, case order 3 | B, then 3 | A, then 3 ∤ AB.
pub fn normal_form(x: &EisensteinInt) -> Result<NormalForm> {
    coprime_to_six(x)?;
    let three = BigInt::from(3);
    let (a, b) = (&x.a, &x.b);
    let nf = if (b % &three).is_zero() {
        NormalForm { unit_exp: 0, a: a.clone(), b: b / &three }
    } else if (a % &three).is_zero() {
        // ω²α = (b − a) − aω
        NormalForm { unit_exp: 1, a: b - a, b: -(a / &three) }
    } else {
        // a ≡ b (mod 3); ωα = −b + (a − b)ω
        NormalForm { unit_exp: 2, a: -b, b: (a - b) / &three }
    };
    debug_assert!(!(&nf.a % &three).is_zero());
    debug_assert!(nf.a.is_odd() || nf.b.is_odd());
    debug_assert_eq!(&nf.reconstruct(), x);
    Ok(nf)
}

pub fn parity(x: &EisensteinInt) -> Result<Parity> {
    let nf = normal_form(x)?;
    Ok(if nf.b.is_even() { Parity::Even } else { Parity::Odd })
}
