//! Primality testing and factorization at desk scale.
//!
//! Below 2⁶⁴ primality is decided by Miller–Rabin with a fixed witness set that
//! is deterministic there. Above it we run Miller–Rabin over the first 64 prime
//! bases followed by a strong Lucas test.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const SMALL_PRIMES: [u64; 64] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
    307, 311,
];

const TRIAL_BOUND: u64 = 1 << 12;
const RHO_ITERATIONS_BIG: u64 = 1 << 22;

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES[..12] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    SMALL_PRIMES[..12].iter().all(|&a| strong_probable_prime_u64(n, a))
}

fn strong_probable_prime_big(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a / n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() { result } else { 0 }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
fn strong_lucas(n: &BigInt) -> bool {
    let sqrt = n.sqrt();
    if &sqrt * &sqrt == *n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 if d.abs() != *n => return false,
            _ => {}
        }
        d = if d.is_positive() { -(d + 2u32) } else { -(d - 2u32) };
    }
    let p: BigInt = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4u32;

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;

    let half = |v: BigInt| -> BigInt {
        let v: BigInt = if v.is_odd() { v + n } else { v };
        let h: BigInt = v >> 1u32;
        h.mod_floor(n)
    };

    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    for i in (0..k.bits()).rev() {
        // doubling
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if k.bit(i) {
            let nu = half(&p * &u + &v);
            let nv = half(&d * &u + &p * &v);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
    }
    false
}

pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let un = n.magnitude();
    SMALL_PRIMES
        .iter()
        .all(|&a| strong_probable_prime_big(un, &BigUint::from(a)))
        && strong_lucas(n)
}

/// `sign · ∏ pᵉ`, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInteger {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl FactoredInteger {
    pub fn value(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| *q == BigInt::from(p))
            .map_or(0, |(_, e)| *e)
    }

    /// Drops the listed primes and the sign.
    pub fn without(&self, drop: &[u64]) -> FactoredInteger {
        FactoredInteger {
            sign: 1,
            factors: self
                .factors
                .iter()
                .filter(|(p, _)| !drop.iter().any(|&d| *p == BigInt::from(d)))
                .cloned()
                .collect(),
        }
    }

    /// Removes one copy of `p`; `p` must divide.
    pub fn divide_prime(&self, p: &BigInt) -> FactoredInteger {
        let mut factors = Vec::with_capacity(self.factors.len());
        for (q, e) in &self.factors {
            if q == p {
                if *e > 1 {
                    factors.push((q.clone(), e - 1));
                }
            } else {
                factors.push((q.clone(), *e));
            }
        }
        FactoredInteger { sign: self.sign, factors }
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<BigInt> {
        let mut divs = vec![BigInt::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            for d in &divs {
                let mut pk = d.clone();
                next.push(pk.clone());
                for _ in 0..*e {
                    pk *= p;
                    next.push(pk.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }

    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|(_, e)| *e as u64 + 1).product()
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Brent's variant of Pollard rho; `n` odd composite.
fn rho_u64(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let m = 128u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r <<= 1;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint) -> Option<BigUint> {
    for c in 1u32..16 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x;
        let mut ys;
        let (mut r, mut q, mut g) = (1u64, BigUint::one(), BigUint::one());
        let m = 128u64;
        let mut steps = 0u64;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            ys = y.clone();
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            steps += r;
            r <<= 1;
            if !g.is_one() || steps > RHO_ITERATIONS_BIG {
                break;
            }
        }
        if g.is_one() {
            return None;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>, stuck: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let factor = match n.to_u64() {
        Some(small) => Some(BigInt::from(rho_u64(small))),
        None => rho_big(n.magnitude()).map(BigInt::from),
    };
    match factor {
        Some(f) => {
            let rest = &n / &f;
            split_into(f, out, stuck);
            split_into(rest, out, stuck);
        }
        None => stuck.push(n),
    }
}

/// Complete factorization of a nonzero integer.
pub fn factorize(n: &BigInt) -> Result<FactoredInteger> {
    if n.is_zero() {
        return Err(Error::PreconditionViolated("cannot factor 0".into()));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();

    let mut p = 2u64;
    while p < TRIAL_BOUND {
        if BigInt::from(p * p) > rest {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            primes.push(BigInt::from(p));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stuck = Vec::new();
    if rest < BigInt::from(TRIAL_BOUND * TRIAL_BOUND) {
        if !rest.is_one() {
            primes.push(rest);
        }
    } else {
        split_into(rest, &mut primes, &mut stuck);
    }

    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    if let Some(cofactor) = stuck.into_iter().reduce(|a, b| a * b) {
        return Err(Error::FactorizationFailed { n: n.clone(), partial: factors, cofactor });
    }
    Ok(FactoredInteger { sign, factors })
}

/// Exponent of `p` in `n` (`n ≠ 0`) and the cofactor.
pub fn split_valuation(n: &BigInt, p: u32) -> (u32, BigInt) {
    let mut v = 0;
    let mut rest = n.clone();
    while !rest.is_zero() && (&rest % p).is_zero() {
        rest /= p;
        v += 1;
    }
    (v, rest)
}
