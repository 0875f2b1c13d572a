//! Group-ring elements over ℤ₂×ℤ₃×ℤ₃ and ℤ₂×ℤ₉.
//!
//! Coefficients are stored row-major over the generator exponents: index
//! `9i + 3j + k` for `XⁱYʲZᵏ` in ℤ₃×ℤ₆, and `9i + j` for `XⁱYʲ` in ℤ₁₈.

mod det;
mod expr;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use det::{
    bareiss_determinant, circulant_determinant, det_characters, det_matrix_oracle,
    det_split_small, group_matrix, DeterminantSplit, SMALL_HEIGHT,
};
pub use expr::{build_from_expression, parse_polynomial, Params, Polynomial};

use crate::error::{Error, Result};

pub const ORDER: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    /// ℤ₃×ℤ₆ ≅ ℤ₂×ℤ₃×ℤ₃ = ⟨X, Y, Z : X² = Y³ = Z³ = 1⟩.
    #[serde(rename = "z3x6")]
    Z3xZ6,
    /// ℤ₁₈ ≅ ℤ₂×ℤ₉ = ⟨X, Y : X² = Y⁹ = 1⟩.
    #[serde(rename = "z18")]
    Z18,
}

impl GroupId {
    pub const ALL: [GroupId; 2] = [GroupId::Z3xZ6, GroupId::Z18];

    pub fn name(self) -> &'static str {
        match self {
            GroupId::Z3xZ6 => "z3x6",
            GroupId::Z18 => "z18",
        }
    }

    /// Orders of the generators X, Y, Z (Z has order 1 in ℤ₁₈).
    pub fn generator_orders(self) -> [u32; 3] {
        match self {
            GroupId::Z3xZ6 => [2, 3, 3],
            GroupId::Z18 => [2, 9, 1],
        }
    }

    pub fn index(self, i: u32, j: u32, k: u32) -> usize {
        let [oi, oj, ok] = self.generator_orders();
        let (i, j, k) = ((i % oi) as usize, (j % oj) as usize, (k % ok) as usize);
        match self {
            GroupId::Z3xZ6 => 9 * i + 3 * j + k,
            GroupId::Z18 => 9 * i + j,
        }
    }

    pub fn exponents(self, idx: usize) -> (u32, u32, u32) {
        match self {
            GroupId::Z3xZ6 => ((idx / 9) as u32, ((idx / 3) % 3) as u32, (idx % 3) as u32),
            GroupId::Z18 => ((idx / 9) as u32, (idx % 9) as u32, 0),
        }
    }

    fn tables(self) -> &'static GroupTables {
        static Z3X6: OnceLock<GroupTables> = OnceLock::new();
        static Z18: OnceLock<GroupTables> = OnceLock::new();
        let cell = match self {
            GroupId::Z3xZ6 => &Z3X6,
            GroupId::Z18 => &Z18,
        };
        cell.get_or_init(|| GroupTables::build(self))
    }

    /// Index of the product `g·h`.
    pub fn mul_index(self, g: usize, h: usize) -> usize {
        self.tables().mul[g][h]
    }

    pub fn inv_index(self, g: usize) -> usize {
        self.tables().inv[g]
    }
}

struct GroupTables {
    mul: [[usize; ORDER]; ORDER],
    inv: [usize; ORDER],
}

impl GroupTables {
    fn build(group: GroupId) -> Self {
        let mut mul = [[0; ORDER]; ORDER];
        let mut inv = [0; ORDER];
        for g in 0..ORDER {
            let (a, b, c) = group.exponents(g);
            for (h, slot) in mul[g].iter_mut().enumerate() {
                let (d, e, f) = group.exponents(h);
                *slot = group.index(a + d, b + e, c + f);
            }
            let [oi, oj, ok] = group.generator_orders();
            inv[g] = group.index(oi - a % oi, oj - b % oj, ok - c % ok);
        }
        Self { mul, inv }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z3x6" | "z3xz6" | "z2xz3xz3" => Ok(GroupId::Z3xZ6),
            "z18" | "z2xz9" => Ok(GroupId::Z18),
            other => Err(Error::PreconditionViolated(format!("unknown group {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    pub group: GroupId,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn new(group: GroupId, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != ORDER {
            return Err(Error::LengthMismatch { expected: ORDER, got: coeffs.len() });
        }
        Ok(Self { group, coeffs })
    }

    pub fn from_i64(group: GroupId, coeffs: &[i64]) -> Result<Self> {
        Self::new(group, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(group: GroupId) -> Self {
        Self { group, coeffs: vec![BigInt::zero(); ORDER] }
    }

    pub fn identity(group: GroupId) -> Self {
        Self::monomial(group, 0, 0, 0)
    }

    pub fn monomial(group: GroupId, i: u32, j: u32, k: u32) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[group.index(i, j, k)] = BigInt::one();
        e
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> &BigInt {
        &self.coeffs[self.group.index(i, j, k)]
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn small_coeffs(&self) -> Option<[i64; ORDER]> {
        let mut out = [0i64; ORDER];
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            *o = c.to_i64()?;
        }
        Some(out)
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.group, other.group))
        }
    }

    /// Convolution: `c_g = Σ_h u_h · v_{h⁻¹g}`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = Self::zero(self.group);
        for (h, uh) in self.coeffs.iter().enumerate() {
            if uh.is_zero() {
                continue;
            }
            for (k, vk) in other.coeffs.iter().enumerate() {
                if vk.is_zero() {
                    continue;
                }
                out.coeffs[self.group.mul_index(h, k)] += uh * vk;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { group: self.group, coeffs })
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self { group: self.group, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.group);
        for _ in 0..e {
            acc = acc.multiply(self).expect("same group");
        }
        acc
    }

    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(num_traits::Signed::abs).max().unwrap_or_default()
    }
}

/// Maps circulant coefficient `cₙ` to the slot `Xⁿ Yⁿ` of ℤ₂×ℤ₉ (CRT, ℤ₁₈ ≅ ℤ₂×ℤ₉).
pub fn crt_circulant(c: &[BigInt]) -> Result<GroupRingElement> {
    if c.len() != ORDER {
        return Err(Error::LengthMismatch { expected: ORDER, got: c.len() });
    }
    let mut e = GroupRingElement::zero(GroupId::Z18);
    for (n, cn) in c.iter().enumerate() {
        e.coeffs[GroupId::Z18.index(n as u32, n as u32, 0)] += cn;
    }
    Ok(e)
}

/// Inverse of [`crt_circulant`].
pub fn circulant_of(e: &GroupRingElement) -> Result<Vec<BigInt>> {
    if e.group != GroupId::Z18 {
        return Err(Error::GroupMismatch(e.group, GroupId::Z18));
    }
    Ok((0..ORDER as u32).map(|n| e.coeffs[GroupId::Z18.index(n, n, 0)].clone()).collect())
}

mod serde_impl {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize)]
    struct Out {
        group: GroupId,
        coeffs: Vec<String>,
    }

    #[derive(Deserialize)]
    struct In {
        group: GroupId,
        coeffs: Vec<serde_json::Value>,
    }

    impl Serialize for GroupRingElement {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            Out {
                group: self.group,
                coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
            }
            .serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for GroupRingElement {
        fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
            let raw = In::deserialize(d)?;
            let coeffs = raw
                .coeffs
                .iter()
                .map(crate::bigint_serde::from_json_value)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(D::Error::custom)?;
            GroupRingElement::new(raw.group, coeffs).map_err(D::Error::custom)
        }
    }
}
