//! Type 1 / Type 2 classification of primes p ≡ 1 (mod 3) and the
//! representation solvers the witness families need.
//!
//! Type 1 primes are those for which 2 is not a cube mod p; they are exactly
//! the norms of odd Eisenstein primes and the primes 4x² + 2xy + 7y². Type 2
//! primes are the norms of even Eisenstein primes, the primes x² + 27y².

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::eisenstein::{parity, EisensteinInt, Parity};
use crate::error::{Error, Result};
use crate::factor::is_prime;
use crate::scalar::residue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrimeTag {
    Type1,
    Type2,
    NotOneMod3,
}

impl fmt::Display for PrimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PrimeTag::Type1 => "Type1",
            PrimeTag::Type2 => "Type2",
            PrimeTag::NotOneMod3 => "NotOneMod3",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeClass {
    pub tag: PrimeTag,
    /// Binary quadratic form representation `(x, y)` for the class.
    pub evidence: Option<(BigInt, BigInt)>,
}

fn require_prime(p: &BigInt) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("{p} is not prime")))
    }
}

fn require_one_mod_3(p: &BigInt) -> Result<()> {
    require_prime(p)?;
    if residue(p, 3) == 1 {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("{p} is not 1 mod 3")))
    }
}

/// Cubic-residue test only; `p` must be prime.
pub fn prime_tag(p: &BigInt) -> PrimeTag {
    if residue(p, 3) != 1 {
        return PrimeTag::NotOneMod3;
    }
    let e = (p - 1u32) / 3u32;
    if BigInt::from(2).modpow(&e, p).is_one() {
        PrimeTag::Type2
    } else {
        PrimeTag::Type1
    }
}

pub fn is_type1(p: &BigInt) -> bool {
    prime_tag(p) == PrimeTag::Type1
}

pub fn classify_prime(p: &BigInt) -> Result<PrimeClass> {
    require_prime(p)?;
    let tag = prime_tag(p);
    if tag == PrimeTag::NotOneMod3 {
        return Ok(PrimeClass { tag, evidence: None });
    }
    if cfg!(debug_assertions) {
        let (a, b) = represent_norm_form(p)?;
        let alpha = EisensteinInt::new(a, BigInt::from(3) * b);
        let expect = if tag == PrimeTag::Type1 { Parity::Odd } else { Parity::Even };
        debug_assert_eq!(parity(&alpha)?, expect, "classifier disagreement at {p}");
    }
    let (_, x, y) = quadratic_form_witness(p)?;
    Ok(PrimeClass { tag, evidence: Some((x, y)) })
}

/// Every `(u, v)` with `u² − uv + v² = n`.
pub fn norm_representations(n: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    if n.is_negative() {
        return out;
    }
    // (2u − v)² + 3v² = 4n
    let four_n: BigInt = n * 4u32;
    let vmax = (&four_n / 3u32).sqrt();
    let mut v = -vmax.clone();
    while v <= vmax {
        let disc = &four_n - &v * &v * 3u32;
        let s = disc.sqrt();
        if &s * &s == disc {
            for t in [s.clone(), -s.clone()] {
                let twice_u = &v + &t;
                if twice_u.is_even() {
                    let pair = (twice_u / 2, v.clone());
                    if !out.contains(&pair) {
                        out.push(pair);
                    }
                }
            }
        }
        v += 1;
    }
    out
}

/// `(a, b)` with `p = N(a + 3bω)` and `2 | ab`, minimal `|a|+|b|`, then `|b|`, then `a > 0`.
pub fn represent_norm_form(p: &BigInt) -> Result<(BigInt, BigInt)> {
    require_one_mod_3(p)?;
    norm_representations(p)
        .into_iter()
        .filter(|(_, v)| (v % 3u32).is_zero())
        .map(|(u, v)| (u, v / 3u32))
        .filter(|(a, b)| (a * b).is_even())
        .min_by_key(|(a, b)| (a.abs() + b.abs(), b.abs(), a.is_negative()))
        .ok_or_else(|| Error::NotRepresentable(format!("{p} as N(a + 3bω) with 2 | ab")))
}

/// `(A, B)` with `p = N(2(1+3B) + 3(1+2A)ω)`; only Type 1 primes have one.
pub fn represent_type1(p: &BigInt) -> Result<(BigInt, BigInt)> {
    require_one_mod_3(p)?;
    norm_representations(p)
        .into_iter()
        .filter(|(u, v)| residue(u, 6) == 2 && residue(v, 6) == 3)
        .map(|(u, v)| ((v - 3u32) / 6u32, (u - 2u32) / 6u32))
        .min_by_key(|(a, b): &(BigInt, BigInt)| (a.abs() + b.abs(), a.clone(), b.clone()))
        .ok_or_else(|| {
            Error::PreconditionViolated(format!("{p} is not a Type 1 prime"))
        })
}

/// `(A, B)` with `p = N(∓1 − 3ω + 6(ω − 1)(Aω + B))`, the sign being `−` for
/// `p ≡ 7 (mod 9)` and `+` for `p ≡ 4 (mod 9)`.
pub fn represent_lemma6(p: &BigInt) -> Result<(BigInt, BigInt)> {
    require_one_mod_3(p)?;
    if !is_type1(p) {
        return Err(Error::PreconditionViolated(format!("{p} is a Type 2 prime")));
    }
    let s: i64 = match residue(p, 9) {
        7 => -1,
        4 => 1,
        r => {
            return Err(Error::PreconditionViolated(format!(
                "{p} ≡ {r} (mod 9), need 4 or 7"
            )))
        }
    };
    // element = (s − 6A − 6B) + (−3 − 12A + 6B)ω
    let mut best: Option<(BigInt, BigInt)> = None;
    for (u, v) in norm_representations(p) {
        let du: BigInt = BigInt::from(s) - &u;
        let dv: BigInt = &v + 3u32;
        if !(&du % 6u32).is_zero() || !(&dv % 6u32).is_zero() {
            continue;
        }
        let q = du / 6u32; // A + B
        let r = dv / 6u32; // B − 2A
        let diff = &q - &r;
        if !(&diff % 3u32).is_zero() {
            continue;
        }
        let a = diff / 3u32;
        let b = &q - &a;
        let better = match &best {
            None => true,
            Some((ba, bb)) => {
                (a.abs() + b.abs(), &a, &b) < (ba.abs() + bb.abs(), ba, bb)
            }
        };
        if better {
            best = Some((a, b));
        }
    }
    best.ok_or_else(|| Error::NotRepresentable(format!("{p} in the shifted Type 1 shape")))
}

/// The element `∓1 − 3ω + 6(ω − 1)(Aω + B)` for the given residue of p mod 9.
pub fn lemma6_element(p_mod_9: u64, a: &BigInt, b: &BigInt) -> EisensteinInt {
    let s = if p_mod_9 == 7 { -1 } else { 1 };
    let base = EisensteinInt::new(BigInt::from(s), BigInt::from(-3));
    let shift = EisensteinInt::new(BigInt::from(-1), BigInt::one())
        * EisensteinInt::new(b.clone(), a.clone());
    base + EisensteinInt::new(&shift.a * 6, &shift.b * 6)
}

/// `(tag, x, y)` with `p = 4x² + 2xy + 7y²` (Type 1) or `p = x² + 27y²` (Type 2).
pub fn quadratic_form_witness(p: &BigInt) -> Result<(PrimeTag, BigInt, BigInt)> {
    require_one_mod_3(p)?;
    let tag = prime_tag(p);
    let mut found: Vec<(BigInt, BigInt)> = Vec::new();
    match tag {
        PrimeTag::Type2 => {
            let ymax = (p / 27u32).sqrt();
            let mut y = -ymax.clone();
            while y <= ymax {
                let rest = p - &y * &y * 27u32;
                let x = rest.sqrt();
                if &x * &x == rest {
                    found.push((x.clone(), y.clone()));
                    found.push((-x, y.clone()));
                }
                y += 1;
            }
        }
        _ => {
            // 4x² + 2xy + 7y² = p  ⇔  (8x + 2y)² = 16p − 108y²
            let ymax = (p * 4u32 / 27u32).sqrt();
            let mut y = -ymax.clone();
            while y <= ymax {
                let disc: BigInt = p * 16u32 - &y * &y * 108u32;
                if !disc.is_negative() {
                    let s = disc.sqrt();
                    if &s * &s == disc {
                        for t in [s.clone(), -s.clone()] {
                            let num = &t - &y * 2u32;
                            if (&num % 8u32).is_zero() {
                                found.push((num / 8u32, y.clone()));
                            }
                        }
                    }
                }
                y += 1;
            }
        }
    }
    found
        .into_iter()
        .min_by_key(|(x, y)| (x.abs() + y.abs(), y.abs(), x.is_negative(), y.is_negative()))
        .map(|(x, y)| (tag, x, y))
        .ok_or_else(|| Error::NotRepresentable(format!("{p} by its class form")))
}

/// The first `count` primes of the given class, ascending.
pub fn type_list(tag: PrimeTag, count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2u64;
    while out.len() < count {
        if crate::factor::is_prime_u64(n) {
            let p = BigInt::from(n);
            if prime_tag(&p) == tag {
                out.push(p);
            }
        }
        n += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_prime(&b(7)).unwrap().tag, PrimeTag::Type1);
        assert_eq!(classify_prime(&b(31)).unwrap().tag, PrimeTag::Type2);
        assert_eq!(classify_prime(&b(5)).unwrap().tag, PrimeTag::NotOneMod3);
        assert_eq!(classify_prime(&b(3)).unwrap().tag, PrimeTag::NotOneMod3);
        assert_eq!(classify_prime(&b(2)).unwrap().tag, PrimeTag::NotOneMod3);
        assert!(classify_prime(&b(21)).is_err());
    }

    #[test]
    fn norm_form_examples() {
        assert_eq!(represent_norm_form(&b(7)).unwrap(), (b(2), b(1)));
        assert_eq!(represent_norm_form(&b(31)).unwrap(), (b(1), b(2)));
        // (1, −1) also has norm 13 but ab is odd.
        assert_eq!(represent_norm_form(&b(13)).unwrap(), (b(4), b(1)));
        assert!(represent_norm_form(&b(11)).is_err());
    }

    #[test]
    fn quadratic_form_examples() {
        assert_eq!(quadratic_form_witness(&b(7)).unwrap(), (PrimeTag::Type1, b(0), b(1)));
        assert_eq!(quadratic_form_witness(&b(31)).unwrap(), (PrimeTag::Type2, b(2), b(1)));
        assert_eq!(quadratic_form_witness(&b(13)).unwrap(), (PrimeTag::Type1, b(1), b(1)));
    }

    #[test]
    fn lemma6_examples() {
        assert_eq!(represent_lemma6(&b(7)).unwrap(), (b(0), b(0)));
        assert_eq!(represent_lemma6(&b(13)).unwrap(), (b(0), b(0)));
        assert!(matches!(represent_lemma6(&b(43)), Err(Error::PreconditionViolated(_))));
        assert!(matches!(represent_lemma6(&b(19)), Err(Error::PreconditionViolated(_))));
        assert!(matches!(represent_lemma6(&b(5)), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn lemma6_reevaluates() {
        for p in type_list(PrimeTag::Type1, 200) {
            let r = residue(&p, 9);
            if r != 4 && r != 7 {
                continue;
            }
            let (a, bb) = represent_lemma6(&p).unwrap();
            assert_eq!(lemma6_element(r, &a, &bb).norm(), p);
        }
    }

    #[test]
    fn type1_shape_reevaluates() {
        for p in type_list(PrimeTag::Type1, 200) {
            let (a, bb) = represent_type1(&p).unwrap();
            let x = EisensteinInt::new((&bb * 3 + 1) * 2, (&a * 2 + 1) * 3);
            assert_eq!(x.norm(), p);
        }
        assert!(represent_type1(&b(31)).is_err());
    }

    #[test]
    fn type_list_examples() {
        let t1: Vec<BigInt> = [7, 13, 19, 37, 61].iter().map(|&v| b(v)).collect();
        let t2: Vec<BigInt> = [31, 43, 109, 127, 157].iter().map(|&v| b(v)).collect();
        assert_eq!(type_list(PrimeTag::Type1, 5), t1);
        assert_eq!(type_list(PrimeTag::Type2, 5), t2);
        assert_eq!(type_list(PrimeTag::Type1, 1), vec![b(7)]);
    }
}
