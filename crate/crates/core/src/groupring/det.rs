//! Group determinants two ways: Dedekind's character product evaluated in
//! ℤ[ω] and ℤ[ω₉], and the 18×18 matrix `(a_{gh⁻¹})` by Bareiss elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{GroupId, GroupRingElement, ORDER};
use crate::cyclotomic::norm9;
use crate::eisenstein::Eisenstein;
use crate::scalar::Scalar;

/// Coefficient height up to which the character product runs in `i128`.
/// The largest intermediate is the ℤ[ω₉] triple-product norm, below
/// 2²⁸·H⁶ < 2¹²⁷ for H ≤ 2¹⁵.
pub const SMALL_HEIGHT: i64 = 1 << 15;

/// `D = D₁·D₂`, the split along the two characters of the ℤ₂ factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeterminantSplit {
    /// Product over characters with x = +1.
    #[serde(with = "crate::bigint_serde")]
    pub d1: BigInt,
    /// Product over characters with x = −1.
    #[serde(with = "crate::bigint_serde")]
    pub d2: BigInt,
    #[serde(with = "crate::bigint_serde")]
    pub d: BigInt,
}

impl DeterminantSplit {
    fn from_halves(d1: BigInt, d2: BigInt) -> Self {
        let d = &d1 * &d2;
        Self { d1, d2, d }
    }
}

/// Conjugate character pairs (s, t) of ℤ₃×ℤ₃, one representative each.
const PAIRS: [(usize, usize); 4] = [(1, 0), (0, 1), (1, 1), (1, 2)];

/// Rational factors of the ℤ₃×ℤ₃ or ℤ₉ determinant of `F(±1, ·)`, with the
/// nonreal characters already paired into norms.
fn branch_factors<T: Scalar>(group: GroupId, a: &[T], x_sign: bool) -> Vec<T> {
    let half = |idx: usize| -> T {
        if x_sign {
            a[idx].clone() + a[idx + 9].clone()
        } else {
            a[idx].clone() - a[idx + 9].clone()
        }
    };
    let c: Vec<T> = (0..9).map(half).collect();
    let trivial = c.iter().cloned().fold(T::zero(), |s, v| s + v);
    let mut out = vec![trivial];
    match group {
        GroupId::Z3xZ6 => {
            for (s, t) in PAIRS {
                let mut powers = [T::zero(), T::zero(), T::zero()];
                for j in 0..3 {
                    for k in 0..3 {
                        let e = (s * j + t * k) % 3;
                        powers[e] = powers[e].clone() + c[3 * j + k].clone();
                    }
                }
                let [p0, p1, p2] = powers;
                out.push(Eisenstein::from_powers(p0, p1, p2).norm());
            }
        }
        GroupId::Z18 => {
            let mut powers = [T::zero(), T::zero(), T::zero()];
            for (j, cj) in c.iter().enumerate() {
                powers[j % 3] = powers[j % 3].clone() + cj.clone();
            }
            let [p0, p1, p2] = powers;
            out.push(Eisenstein::from_powers(p0, p1, p2).norm());
            out.push(norm9(&c).expect("ninth-root triple product lies in ℤ[ω]"));
        }
    }
    out
}

fn product_i128(factors: &[i128]) -> BigInt {
    let mut acc: i128 = 1;
    for (i, &f) in factors.iter().enumerate() {
        match acc.checked_mul(f) {
            Some(v) => acc = v,
            None => {
                return factors[i..].iter().fold(BigInt::from(acc), |s, &v| s * BigInt::from(v));
            }
        }
    }
    BigInt::from(acc)
}

/// `(D₁, D₂)` entirely in `i128`, or `None` if the height is too large or the
/// product overflows.
pub fn det_split_small(group: GroupId, coeffs: &[i64; ORDER]) -> Option<(i128, i128)> {
    if coeffs.iter().any(|c| c.unsigned_abs() > SMALL_HEIGHT as u64) {
        return None;
    }
    let a: Vec<i128> = coeffs.iter().map(|&c| c as i128).collect();
    let prod = |x_sign| {
        branch_factors(group, &a, x_sign).into_iter().try_fold(1i128, |s, v| s.checked_mul(v))
    };
    Some((prod(true)?, prod(false)?))
}

/// Dedekind character product, evaluated exactly.
pub fn det_characters(u: &GroupRingElement) -> DeterminantSplit {
    let group = u.group;
    if let Some(small) = u.small_coeffs() {
        if small.iter().all(|c| c.unsigned_abs() <= SMALL_HEIGHT as u64) {
            let a: Vec<i128> = small.iter().map(|&c| c as i128).collect();
            let d1 = product_i128(&branch_factors(group, &a, true));
            let d2 = product_i128(&branch_factors(group, &a, false));
            return DeterminantSplit::from_halves(d1, d2);
        }
    }
    let a = u.coeffs();
    let prod = |x_sign| {
        branch_factors(group, a, x_sign).into_iter().fold(BigInt::one(), |s, v| s * v)
    };
    DeterminantSplit::from_halves(prod(true), prod(false))
}

/// The group matrix `M[g][h] = a_{gh⁻¹}`.
pub fn group_matrix(u: &GroupRingElement) -> Vec<Vec<BigInt>> {
    let g = u.group;
    (0..ORDER)
        .map(|row| {
            (0..ORDER).map(|col| u.coeffs()[g.mul_index(row, g.inv_index(col))].clone()).collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination; exact for any square integer matrix.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.div_floor(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign { -d } else { d }
}

/// Independent route: determinant of the literal group matrix.
pub fn det_matrix_oracle(u: &GroupRingElement) -> BigInt {
    bareiss_determinant(group_matrix(u))
}

/// Determinant of the 18×18 circulant with first row `c`.
pub fn circulant_determinant(c: &[BigInt]) -> BigInt {
    let n = c.len();
    let m = (0..n).map(|i| (0..n).map(|j| c[(j + n - i) % n].clone()).collect()).collect();
    bareiss_determinant(m)
}
