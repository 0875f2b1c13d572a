//! Arithmetic in ℤ[ω₉] = ℤ[y]/(y⁶ + y³ + 1) and the projections of ninth-root
//! products down to ℤ[ω].

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::eisenstein::Eisenstein;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `c0 + c1·ω₉ + … + c5·ω₉⁵`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo9<T = BigInt> {
    pub c: [T; 6],
}

pub type NinthCyclotomicInt = Cyclo9<BigInt>;

impl<T: Scalar> Cyclo9<T> {
    pub fn zero() -> Self {
        Self { c: std::array::from_fn(|_| T::zero()) }
    }

    pub fn one() -> Self {
        let mut r = Self::zero();
        r.c[0] = T::one();
        r
    }

    /// `ω₉^e` for any integer exponent.
    pub fn root_pow(e: i64) -> Self {
        let mut buf: [T; 9] = std::array::from_fn(|_| T::zero());
        buf[e.rem_euclid(9) as usize] = T::one();
        Self::from_poly(&buf)
    }

    /// Reduces an arbitrary polynomial (low degree first) modulo y⁹ − 1 and then Φ₉.
    pub fn from_poly(f: &[T]) -> Self {
        let mut folded: [T; 9] = std::array::from_fn(|_| T::zero());
        for (i, c) in f.iter().enumerate() {
            let slot = &mut folded[i % 9];
            *slot = slot.clone() + c.clone();
        }
        Self::reduce9(folded)
    }

    // y⁶ = −y³ − 1, y⁷ = −y⁴ − y, y⁸ = −y⁵ − y²
    fn reduce9(mut r: [T; 9]) -> Self {
        for d in (6..9).rev() {
            let top = std::mem::replace(&mut r[d], T::zero());
            r[d - 3] = r[d - 3].clone() - top.clone();
            r[d - 6] = r[d - 6].clone() - top;
        }
        let [c0, c1, c2, c3, c4, c5, ..] = r;
        Self { c: [c0, c1, c2, c3, c4, c5] }
    }

    /// Image under y ↦ yᵏ. For k ∈ {3, 6} the result lands in the ω-subring.
    pub fn substitute(&self, k: u32) -> Self {
        let mut folded: [T; 9] = std::array::from_fn(|_| T::zero());
        for (i, c) in self.c.iter().enumerate() {
            let slot = &mut folded[(i * k as usize) % 9];
            *slot = slot.clone() + c.clone();
        }
        Self::reduce9(folded)
    }

    pub fn is_in_subring(&self) -> bool {
        [1, 2, 4, 5].iter().all(|&i| self.c[i].is_zero())
    }

    /// `c0 + c3·ω` when the element lies in ℤ[ω] (via ω₉³ ↦ ω).
    pub fn to_eisenstein(&self) -> Result<Eisenstein<T>> {
        if self.is_in_subring() {
            Ok(Eisenstein::new(self.c[0].clone(), self.c[3].clone()))
        } else {
            Err(Error::NotInSubring(format!("{:?}", self.c)))
        }
    }

    pub fn from_eisenstein(x: &Eisenstein<T>) -> Self {
        let mut r = Self::zero();
        r.c[0] = x.a.clone();
        r.c[3] = x.b.clone();
        r
    }
}

impl<T: Scalar> Add for Cyclo9<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (l, r) in out.c.iter_mut().zip(rhs.c) {
            *l = l.clone() + r;
        }
        out
    }
}

impl<T: Scalar> Sub for Cyclo9<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for Cyclo9<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { c: self.c.map(|v| -v) }
    }
}

impl<T: Scalar> Mul for Cyclo9<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a, T: Scalar> Mul<&'a Cyclo9<T>> for &'a Cyclo9<T> {
    type Output = Cyclo9<T>;
    fn mul(self, rhs: &Cyclo9<T>) -> Cyclo9<T> {
        let mut acc: [T; 9] = std::array::from_fn(|_| T::zero());
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                let slot = &mut acc[(i + j) % 9];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        Cyclo9::reduce9(acc)
    }
}

/// `f(ω₉)·f(ω₉⁴)·f(ω₉⁷)`, which lies in ℤ[ω].
pub fn triple_product<T: Scalar>(f: &[T]) -> Result<Eisenstein<T>> {
    let base = Cyclo9::from_poly(f);
    let prod = &(&base * &base.substitute(4)) * &base.substitute(7);
    prod.to_eisenstein()
}

/// N₉(f(ω₉)), the product of f over the six primitive ninth roots of unity.
pub fn norm9<T: Scalar>(f: &[T]) -> Result<T> {
    Ok(triple_product(f)?.norm())
}
