//! Test-only oracles, written without the library's algorithms.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use groupdet_core::GroupId;

/// Generator orders of the group, matching the library's index layout
/// `9i + 3j + k` (ℤ₂×ℤ₃×ℤ₃) and `9i + j` (ℤ₂×ℤ₉).
fn decompose(g: GroupId, idx: usize) -> (usize, usize, usize) {
    match g {
        GroupId::Z3xZ6 => (idx / 9, (idx / 3) % 3, idx % 3),
        GroupId::Z18 => (idx / 9, idx % 9, 0),
    }
}

fn compose(g: GroupId, (i, j, k): (usize, usize, usize)) -> usize {
    match g {
        GroupId::Z3xZ6 => 9 * (i % 2) + 3 * (j % 3) + (k % 3),
        GroupId::Z18 => 9 * (i % 2) + (j % 9),
    }
}

fn orders(g: GroupId) -> (usize, usize, usize) {
    match g {
        GroupId::Z3xZ6 => (2, 3, 3),
        GroupId::Z18 => (2, 9, 1),
    }
}

/// `g · h⁻¹`
pub fn div_index(g: GroupId, a: usize, b: usize) -> usize {
    let (o1, o2, o3) = orders(g);
    let (a1, a2, a3) = decompose(g, a);
    let (b1, b2, b3) = decompose(g, b);
    compose(g, ((a1 + o1 - b1) % o1, (a2 + o2 - b2) % o2, (a3 + o3 - b3) % o3.max(1)))
}

pub fn mul_index(g: GroupId, a: usize, b: usize) -> usize {
    let (a1, a2, a3) = decompose(g, a);
    let (b1, b2, b3) = decompose(g, b);
    compose(g, (a1 + b1, a2 + b2, a3 + b3))
}

/// Convolution in the group ring.
pub fn convolve(g: GroupId, u: &[i64], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; 18];
    for a in 0..18 {
        for b in 0..18 {
            out[mul_index(g, a, b)] += u[a] * v[b];
        }
    }
    out
}

fn det_mod(m: &[Vec<i64>], p: i128) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| (v as i128).rem_euclid(p)).collect()).collect();
    let mut det = 1i128;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else { return 0 };
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = pow_mod(a[c][c], p - 2, p);
        for r in c + 1..n {
            let f = a[r][c] * inv % p;
            if f != 0 {
                let (top, bottom) = a.split_at_mut(r);
                for (x, &y) in bottom[0][c..n].iter_mut().zip(&top[c][c..n]) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
    }
    det
}

fn pow_mod(mut b: i128, mut e: i128, p: i128) -> i128 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Primes just below 2⁶¹; products stay inside i128 in `det_mod`.
const CRT_PRIMES: [i128; 4] = [2305843009213693951, 2305843009213693921, 2305843009213693907, 2305843009213693723];

/// Group determinant `det(a_{gh⁻¹})` by Gaussian elimination modulo four
/// primes and CRT; exact while |det| < 2²⁴³.
pub fn modular_det(g: GroupId, coeffs: &[i64]) -> BigInt {
    let m: Vec<Vec<i64>> = (0..18).map(|r| (0..18).map(|c| coeffs[div_index(g, r, c)]).collect()).collect();
    let mut acc = BigInt::zero();
    let mut modulus = BigInt::one();
    for &p in &CRT_PRIMES {
        let r = BigInt::from(det_mod(&m, p));
        let pb = BigInt::from(p);
        // acc + modulus·t ≡ r (mod p)
        let inv = BigInt::from(pow_mod((&modulus % &pb).try_into().unwrap(), p - 2, p));
        let t = ((r - &acc) * inv).mod_floor(&pb);
        acc += &modulus * t;
        modulus *= pb;
    }
    let half = &modulus / 2;
    if acc > half {
        acc - modulus
    } else {
        acc
    }
}

/// `∏ f(ζ)` over the six primitive ninth roots of unity, in floating point.
pub fn norm9_complex(f: &[i64]) -> i128 {
    let mut re = 1.0f64;
    let mut im = 0.0f64;
    for k in [1, 2, 4, 5, 7, 8] {
        let (mut sr, mut si) = (0.0, 0.0);
        for (e, &c) in f.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * (k * e) as f64 / 9.0;
            sr += c as f64 * t.cos();
            si += c as f64 * t.sin();
        }
        (re, im) = (re * sr - im * si, re * si + im * sr);
    }
    assert!(im.abs() < 1e-3 * (1.0 + re.abs()));
    re.round() as i128
}

pub fn is_prime_naive(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Primes `p ≤ bound` of the form `4x² + 2xy + 7y²`.
pub fn type1_primes(bound: i64) -> Vec<i64> {
    let mut hits = vec![false; bound as usize + 1];
    let r = ((bound as f64).sqrt() as i64) + 2;
    for x in -r..=r {
        for y in -r..=r {
            let v = 4 * x * x + 2 * x * y + 7 * y * y;
            if v <= bound && is_prime_naive(v) {
                hits[v as usize] = true;
            }
        }
    }
    (0..=bound).filter(|&p| hits[p as usize]).collect()
}

/// Primes `p ≤ bound` of the form `x² + 27y²`.
pub fn type2_primes(bound: i64) -> Vec<i64> {
    let mut hits = vec![false; bound as usize + 1];
    let r = ((bound as f64).sqrt() as i64) + 2;
    for x in 0..=r {
        for y in 1..=r {
            let v = x * x + 27 * y * y;
            if v <= bound && is_prime_naive(v) {
                hits[v as usize] = true;
            }
        }
    }
    (0..=bound).filter(|&p| hits[p as usize]).collect()
}

/// One factor of a parametric form.
#[derive(Clone, Copy, Debug)]
pub enum Factor {
    /// `r + M·t`, `t ∈ ℤ`
    Lin(i64, i64),
    /// any integer coprime to the given number
    Coprime(i64),
    /// any integer
    Any,
    /// a Type 1 prime with `p mod 18` in the set (empty: any)
    Type1(&'static [i64]),
}

/// `sign · c · ∏ factors`, optionally requiring the 3-adic valuation of the
/// value to be exactly `v3`.
pub struct FormSpec {
    pub signed: bool,
    pub c: i64,
    pub factors: &'static [Factor],
    pub v3: Option<u32>,
}

fn v3(mut n: i64) -> u32 {
    let mut v = 0;
    while n != 0 && n % 3 == 0 {
        n /= 3;
        v += 1;
    }
    v
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

fn accepts_last(f: Factor, v: i64, t1: &[i64]) -> bool {
    match f {
        Factor::Lin(r, m) => (v - r).rem_euclid(m) == 0,
        Factor::Coprime(n) => gcd(v, n) == 1,
        Factor::Any => true,
        Factor::Type1(res) => t1.binary_search(&v).is_ok() && (res.is_empty() || res.contains(&(v % 18))),
    }
}

/// Whether `v` is a product of values of `factors`, enumerating every
/// admissible value of each factor but the last.
fn splits(v: i64, factors: &[Factor], t1: &[i64]) -> bool {
    let (last, init) = factors.split_last().unwrap();
    let Some((&first, rest_init)) = init.split_first() else {
        return accepts_last(*last, v, t1);
    };
    let rest: Vec<Factor> = rest_init.iter().copied().chain(std::iter::once(*last)).collect();
    let av = v.abs();
    let try_value = |f: i64| f != 0 && v % f == 0 && splits(v / f, &rest, t1);
    match first {
        Factor::Lin(r, m) => {
            let lo = (-av - r).div_euclid(m) - 1;
            let hi = (av - r).div_euclid(m) + 1;
            (lo..=hi).map(|t| r + m * t).filter(|f| f.abs() <= av).any(try_value)
        }
        Factor::Type1(_) => t1.iter().take_while(|&&p| p <= av).filter(|&&p| accepts_last(first, p, t1)).any(|&p| try_value(p)),
        Factor::Coprime(_) | Factor::Any => {
            (-av..=av).filter(|&f| accepts_last(first, f, t1)).any(try_value)
        }
    }
}

impl FormSpec {
    pub fn contains(&self, d: i64, t1: &[i64]) -> bool {
        if self.v3.is_some_and(|e| d == 0 || v3(d) != e) {
            return false;
        }
        let signs: &[i64] = if self.signed { &[1, -1] } else { &[1] };
        signs.iter().any(|s| {
            let v = s * d;
            v % self.c == 0 && (v != 0 || self.factors.iter().any(|f| matches!(f, Factor::Any)))
                && (v == 0 || splits(v / self.c, self.factors, t1))
        })
    }
}

use Factor::*;

pub const Z3X6_FORMS: &[FormSpec] = &[
    FormSpec { signed: true, c: 1, factors: &[Lin(1, 18)], v3: None },
    FormSpec { signed: true, c: 4, factors: &[Lin(4, 9), Lin(4, 9)], v3: None },
    FormSpec { signed: true, c: 729, factors: &[Lin(1, 6)], v3: None },
    FormSpec { signed: false, c: 6561, factors: &[Lin(1, 2)], v3: None },
    FormSpec { signed: true, c: 4 * 729, factors: &[Lin(1, 3), Lin(4, 9)], v3: None },
    FormSpec { signed: false, c: 4 * 6561, factors: &[Lin(4, 9), Any], v3: None },
    FormSpec { signed: false, c: 4 * 531441, factors: &[Any], v3: None },
    FormSpec { signed: false, c: 2187, factors: &[Type1(&[]), Lin(1, 2)], v3: Some(7) },
    FormSpec { signed: false, c: 2187 * 64, factors: &[Any], v3: Some(7) },
    FormSpec { signed: false, c: 2187 * 16, factors: &[Lin(7, 18), Lin(1, 2)], v3: Some(7) },
    FormSpec { signed: false, c: 2187 * 4, factors: &[Type1(&[]), Lin(4, 9), Any], v3: Some(7) },
    FormSpec { signed: false, c: 2187 * 4, factors: &[Type1(&[7]), Lin(2, 9), Any], v3: Some(7) },
    FormSpec { signed: false, c: 2187 * 4, factors: &[Type1(&[13]), Any], v3: Some(7) },
];

pub const Z18_FORMS: &[FormSpec] = &[
    FormSpec { signed: false, c: 1, factors: &[Coprime(6)], v3: None },
    FormSpec { signed: false, c: 4, factors: &[Coprime(3)], v3: None },
    FormSpec { signed: false, c: 81, factors: &[Lin(1, 2)], v3: None },
    FormSpec { signed: false, c: 324, factors: &[Any], v3: None },
    FormSpec { signed: false, c: 27, factors: &[Type1(&[]), Coprime(6)], v3: None },
    FormSpec { signed: false, c: 4 * 27, factors: &[Type1(&[]), Coprime(3)], v3: None },
    FormSpec { signed: false, c: 16 * 27, factors: &[Coprime(6)], v3: None },
    FormSpec { signed: false, c: 64 * 27, factors: &[Coprime(3)], v3: None },
];

/// Membership by enumerating the parametric forms directly.
pub fn in_forms(g: GroupId, d: i64, t1: &[i64]) -> bool {
    let forms = match g {
        GroupId::Z3xZ6 => Z3X6_FORMS,
        GroupId::Z18 => Z18_FORMS,
    };
    forms.iter().any(|f| f.contains(d, t1))
}

pub fn random_coeffs(rng: &mut impl Rng, lo: i64, hi: i64) -> [i64; 18] {
    let mut c = [0; 18];
    for v in &mut c {
        *v = rng.gen_range(lo..=hi);
    }
    c
}
