//! Decision procedures for `D ∈ S(ℤ₃×ℤ₆)` and `D ∈ S(ℤ₁₈)`.
//!
//! Each positive verdict names the parametric family that produces `D` and
//! carries parameters that reproduce it exactly via [`Form::evaluate`]. Each
//! negative verdict names the clause that excludes it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::factor::{factorize, split_valuation, FactoredInteger};
use crate::groupring::GroupId;
use crate::primeclass::is_type1;
use crate::scalar::residue;

/// Parametric families and exclusion clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Zero,
    // ℤ₃×ℤ₃ helper
    Z3Z3Multiple,
    Z3Z3PlusOne,
    Z3Z3MinusOne,
    // ℤ₃×ℤ₆, 3-adic valuation ≠ 7
    T1OddCoprime,
    T1EvenCoprime,
    T1Odd3p6,
    T1Odd3p8,
    T1Even3p6,
    T1Even3p8,
    T1Even3p12,
    // ℤ₃×ℤ₆, 3⁷ ‖ D
    T2OddType1,
    T2Even2p6,
    T2EvenNice,
    T2EvenTypeA,
    T2EvenTypeB,
    T2EvenTypeC,
    // ℤ₁₈, 3-adic valuation ≠ 3
    T3Coprime,
    T3Even,
    T3Odd3p4,
    T3Even3p4,
    // ℤ₁₈, 3³ ‖ D
    T4OddType1,
    T4EvenType1,
    T4Even2p4,
    T4Even2p6,
    // exclusions
    Z3Z3Excluded,
    Restriction2,
    Restriction3,
    T1OddResidue,
    T1EvenNoSplit,
    T1Even3p6NoDivisor,
    T1Even3p8NoDivisor,
    T2OddNoType1,
    T2EvenUnmatched,
    T4OddNoType1,
    T4EvenUnmatched,
}

impl Form {
    pub fn id(self) -> &'static str {
        use Form::*;
        match self {
            Zero => "zero",
            Z3Z3Multiple => "Z3Z3-3^6m",
            Z3Z3PlusOne => "Z3Z3-9m+1",
            Z3Z3MinusOne => "Z3Z3-9m-1",
            T1OddCoprime => "T1-odd-coprime",
            T1EvenCoprime => "T1-even-coprime",
            T1Odd3p6 => "T1-odd-3^6",
            T1Odd3p8 => "T1-odd-3^8",
            T1Even3p6 => "T1-even-3^6",
            T1Even3p8 => "T1-even-3^8",
            T1Even3p12 => "T1-even-3^12",
            T2OddType1 => "T2-odd-type1",
            T2Even2p6 => "T2-even-2^6",
            T2EvenNice => "T2-even-(8)",
            T2EvenTypeA => "T2-even-(9)",
            T2EvenTypeB => "T2-even-(10)",
            T2EvenTypeC => "T2-even-(11)",
            T3Coprime => "T3-coprime",
            T3Even => "T3-even",
            T3Odd3p4 => "T3-odd-3^4",
            T3Even3p4 => "T3-even-3^4",
            T4OddType1 => "T4-odd-type1",
            T4EvenType1 => "T4-even-type1",
            T4Even2p4 => "T4-even-2^4",
            T4Even2p6 => "T4-even-2^6",
            Z3Z3Excluded => "Z3Z3-excluded",
            Restriction2 => "restriction-2",
            Restriction3 => "restriction-3",
            T1OddResidue => "T1-odd-residue",
            T1EvenNoSplit => "T1-even-no-split",
            T1Even3p6NoDivisor => "T1-even-3^6-no-divisor",
            T1Even3p8NoDivisor => "T1-even-3^8-no-divisor",
            T2OddNoType1 => "T2-odd-no-type1",
            T2EvenUnmatched => "T2-even-unmatched",
            T4OddNoType1 => "T4-odd-no-type1",
            T4EvenUnmatched => "T4-even-unmatched",
        }
    }

    /// The closed form as text, in the parameter names the verdict uses.
    pub fn formula(self) -> &'static str {
        use Form::*;
        match self {
            Zero => "0",
            Z3Z3Multiple => "3^6 m",
            Z3Z3PlusOne => "9m + 1",
            Z3Z3MinusOne => "9m - 1",
            T1OddCoprime => "sign (1 + 18m)",
            T1EvenCoprime => "sign 4 (4 + 9m)(4 + 9k)",
            T1Odd3p6 => "sign 3^6 (1 + 6m)",
            T1Odd3p8 => "3^8 (1 + 2m)",
            T1Even3p6 => "sign 2^2 3^6 (1 + 3m)(4 + 9k)",
            T1Even3p8 => "2^2 3^8 m (4 + 9k)",
            T1Even3p12 => "2^2 3^12 m",
            T2OddType1 => "3^7 (2m + 1) p, p Type 1",
            T2Even2p6 => "3^7 2^6 m",
            T2EvenNice => "3^7 2^4 (2m + 1)(7 + 18k)",
            T2EvenTypeA => "3^7 2^2 m (4 + 9k) p, p Type 1",
            T2EvenTypeB => "3^7 2^2 m (2 + 9k) p, p Type 1, p = 7 mod 18",
            T2EvenTypeC => "3^7 2^2 m p, p Type 1, p = 13 mod 18",
            T3Coprime => "m, gcd(m, 6) = 1",
            T3Even => "2^2 m, gcd(m, 3) = 1",
            T3Odd3p4 => "3^4 (2m + 1)",
            T3Even3p4 => "2^2 3^4 m",
            T4OddType1 => "3^3 m p, p Type 1, gcd(m, 6) = 1",
            T4EvenType1 => "2^2 3^3 m p, p Type 1, gcd(m, 3) = 1",
            T4Even2p4 => "2^4 3^3 m, gcd(m, 6) = 1",
            T4Even2p6 => "2^6 3^3 m, gcd(m, 3) = 1",
            Z3Z3Excluded => "not 3^6 m and not 9m ± 1",
            Restriction2 => "2 | D but 4 ∤ D",
            Restriction3 => "3 | D but the 3-adic valuation is not admissible",
            T1OddResidue => "odd, coprime to 3, not ±1 mod 18",
            T1EvenNoSplit => "D/4 has no split into two factors ±4 mod 9",
            T1Even3p6NoDivisor => "D/(4·3^6) has no divisor ±4 mod 9",
            T1Even3p8NoDivisor => "D/(4·3^l) has no divisor ±4 mod 9",
            T2OddNoType1 => "3^7 ‖ D, D odd, no Type 1 prime factor",
            T2EvenUnmatched => "3^7 ‖ D, D even, none of the even forms apply",
            T4OddNoType1 => "3^3 ‖ D, D odd, no Type 1 prime factor",
            T4EvenUnmatched => "3^3 ‖ D, D even, no Type 1 prime and 2-adic valuation not 4 or ≥ 6",
        }
    }

    /// Substitutes the parameters into the closed form; `None` for exclusions
    /// or missing parameters.
    pub fn evaluate(self, params: &Parameters) -> Option<BigInt> {
        use Form::*;
        let p = |n: &str| params.get(n).cloned();
        let int = |v: i64| BigInt::from(v);
        let pow = |b: i64, e: usize| num_traits::pow(BigInt::from(b), e);
        let sign = || p("sign").unwrap_or_else(BigInt::one);
        Some(match self {
            Zero => BigInt::zero(),
            Z3Z3Multiple => pow(3, 6) * p("m")?,
            Z3Z3PlusOne => p("m")? * 9 + 1,
            Z3Z3MinusOne => p("m")? * 9 - 1,
            T1OddCoprime => sign() * (p("m")? * 18 + 1),
            T1EvenCoprime => sign() * 4 * (p("m")? * 9 + 4) * (p("k")? * 9 + 4),
            T1Odd3p6 => sign() * pow(3, 6) * (p("m")? * 6 + 1),
            T1Odd3p8 => pow(3, 8) * (p("m")? * 2 + 1),
            T1Even3p6 => sign() * 4 * pow(3, 6) * (p("m")? * 3 + 1) * (p("k")? * 9 + 4),
            T1Even3p8 => 4 * pow(3, 8) * p("m")? * (p("k")? * 9 + 4),
            T1Even3p12 => 4 * pow(3, 12) * p("m")?,
            T2OddType1 => pow(3, 7) * (p("m")? * 2 + 1) * p("p")?,
            T2Even2p6 => pow(3, 7) * pow(2, 6) * p("m")?,
            T2EvenNice => pow(3, 7) * 16 * (p("m")? * 2 + 1) * (p("k")? * 18 + 7),
            T2EvenTypeA => pow(3, 7) * 4 * p("m")? * (p("k")? * 9 + 4) * p("p")?,
            T2EvenTypeB => pow(3, 7) * 4 * p("m")? * (p("k")? * 9 + 2) * p("p")?,
            T2EvenTypeC => pow(3, 7) * 4 * p("m")? * p("p")?,
            T3Coprime => p("m")?,
            T3Even => int(4) * p("m")?,
            T3Odd3p4 => pow(3, 4) * (p("m")? * 2 + 1),
            T3Even3p4 => pow(3, 4) * 4 * p("m")?,
            T4OddType1 => int(27) * p("m")? * p("p")?,
            T4EvenType1 => int(4 * 27) * p("m")? * p("p")?,
            T4Even2p4 => int(16 * 27) * p("m")?,
            T4Even2p6 => int(64 * 27) * p("m")?,
            _ => return None,
        })
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Ordered name → value list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Parameters(pub Vec<(&'static str, BigInt)>);

impl Parameters {
    pub fn get(&self, name: &str) -> Option<&BigInt> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    fn with(mut self, name: &'static str, v: BigInt) -> Self {
        self.0.push((name, v));
        self
    }
}

impl Serialize for Parameters {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, &v.to_string())?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub in_set: bool,
    #[serde(serialize_with = "form_id")]
    pub form: Form,
    pub parameters: Parameters,
}

fn form_id<S: Serializer>(f: &Form, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(f.id())
}

impl MembershipVerdict {
    fn member(form: Form, parameters: Parameters) -> Self {
        Self { in_set: true, form, parameters }
    }

    fn excluded(form: Form, v2: u32, v3: u32) -> Self {
        let parameters = Parameters::default()
            .with("v2", BigInt::from(v2))
            .with("v3", BigInt::from(v3));
        Self { in_set: false, form, parameters }
    }

    /// The value of the matched form, for positive verdicts.
    pub fn reconstruct(&self) -> Option<BigInt> {
        if self.in_set {
            self.form.evaluate(&self.parameters)
        } else {
            None
        }
    }
}

fn params() -> Parameters {
    Parameters::default()
}

/// `S(ℤ₃×ℤ₃) = {3⁶m} ∪ {9m ± 1}`.
pub fn decide_z3z3(d: &BigInt) -> MembershipVerdict {
    let r = residue(d, 729);
    if r == 0 {
        return MembershipVerdict::member(Form::Z3Z3Multiple, params().with("m", d / 729));
    }
    match residue(d, 9) {
        1 => MembershipVerdict::member(Form::Z3Z3PlusOne, params().with("m", (d - 1) / 9)),
        8 => MembershipVerdict::member(Form::Z3Z3MinusOne, params().with("m", (d + 1) / 9)),
        _ => {
            let (v3, _) = split_valuation(d, 3);
            MembershipVerdict::excluded(Form::Z3Z3Excluded, split_valuation(d, 2).0, v3)
        }
    }
}

/// Violated necessary conditions; empty when `d` passes every screen.
pub fn restriction_screen(d: &BigInt, group: GroupId) -> Vec<String> {
    let mut out = Vec::new();
    if d.is_zero() {
        return out;
    }
    let (v2, _) = split_valuation(d, 2);
    let (v3, _) = split_valuation(d, 3);
    if v2 == 1 {
        out.push("2|D but 4∤D".to_string());
    }
    match group {
        GroupId::Z18 if (1..3).contains(&v3) => out.push("3|D but 27∤D".to_string()),
        GroupId::Z3xZ6 if (1..6).contains(&v3) => out.push("3|D but 3^6∤D".to_string()),
        _ => {}
    }
    out
}

/// Valuations and the unit-free parts of `d`.
struct Split {
    sign: BigInt,
    v2: u32,
    v3: u32,
    /// `|d| / (2^v2 · 3^v3)`
    core: BigInt,
}

impl Split {
    fn of(d: &BigInt) -> Self {
        let (v2, rest) = split_valuation(&d.abs(), 2);
        let (v3, core) = split_valuation(&rest, 3);
        Split { sign: d.signum(), v2, v3, core }
    }
}

fn type1_primes(f: &FactoredInteger) -> Vec<BigInt> {
    f.primes().filter(|p| is_type1(p)).cloned().collect()
}

/// Smallest divisor `e` of `n` with `e mod modulus ∈ residues` and, when
/// given, `n/e mod modulus ∈ cofactor_residues`.
fn divisor_with_residue(
    f: &FactoredInteger,
    modulus: u64,
    residues: &[u64],
    cofactor_residues: Option<&[u64]>,
) -> Option<BigInt> {
    let n = f.value().abs();
    f.divisors().into_iter().find(|e| {
        residues.contains(&residue(e, modulus))
            && cofactor_residues.is_none_or(|rs| rs.contains(&residue(&(&n / e), modulus)))
    })
}

/// `(t, s)` with `t ≡ target (mod modulus)` and `s·t = e`, `s = ±1`.
fn signed_toward(e: &BigInt, modulus: u64, target: u64) -> (BigInt, BigInt) {
    if residue(e, modulus) == target {
        (e.clone(), BigInt::one())
    } else {
        (-e, -BigInt::one())
    }
}

/// Solves `value = base + step·m` for `m`.
fn linear_param(value: &BigInt, base: i64, step: i64) -> BigInt {
    let (q, r) = (value - base).div_rem(&BigInt::from(step));
    debug_assert!(r.is_zero());
    q
}

pub fn decide(d: &BigInt, group: GroupId) -> Result<MembershipVerdict> {
    match group {
        GroupId::Z18 => decide_z18(d),
        GroupId::Z3xZ6 => decide_z3x6(d),
    }
}

pub fn decide_z18(d: &BigInt) -> Result<MembershipVerdict> {
    use Form::*;
    if d.is_zero() {
        return Ok(MembershipVerdict::member(Zero, params()));
    }
    let s = Split::of(d);
    let (j, l) = (s.v2, s.v3);
    if j == 1 {
        return Ok(MembershipVerdict::excluded(Restriction2, j, l));
    }
    if l == 1 || l == 2 {
        return Ok(MembershipVerdict::excluded(Restriction3, j, l));
    }
    let verdict = match (l, j) {
        (0, 0) => MembershipVerdict::member(T3Coprime, params().with("m", d.clone())),
        (0, _) => MembershipVerdict::member(T3Even, params().with("m", d / 4)),
        (3, _) => {
            let core = factorize(&s.core)?;
            let t1 = type1_primes(&core);
            if let Some(p) = t1.first() {
                let (form, unit) = if j == 0 { (T4OddType1, 27) } else { (T4EvenType1, 4 * 27) };
                let m = d / (BigInt::from(unit) * p);
                MembershipVerdict::member(form, params().with("p", p.clone()).with("m", m))
            } else if j == 0 {
                MembershipVerdict::excluded(T4OddNoType1, j, l)
            } else if j == 4 {
                MembershipVerdict::member(T4Even2p4, params().with("m", d / (16 * 27)))
            } else if j >= 6 {
                MembershipVerdict::member(T4Even2p6, params().with("m", d / (64 * 27)))
            } else {
                MembershipVerdict::excluded(T4EvenUnmatched, j, l)
            }
        }
        (_, 0) => {
            let q: BigInt = d / 81;
            MembershipVerdict::member(T3Odd3p4, params().with("m", linear_param(&q, 1, 2)))
        }
        _ => MembershipVerdict::member(T3Even3p4, params().with("m", d / 324)),
    };
    Ok(verdict)
}

const PM4_MOD9: [u64; 2] = [4, 5];
const PM2_MOD9: [u64; 2] = [2, 7];
const PM7_MOD18: [u64; 2] = [7, 11];

pub fn decide_z3x6(d: &BigInt) -> Result<MembershipVerdict> {
    use Form::*;
    if d.is_zero() {
        return Ok(MembershipVerdict::member(Zero, params()));
    }
    let s = Split::of(d);
    let (j, l) = (s.v2, s.v3);
    if j == 1 {
        return Ok(MembershipVerdict::excluded(Restriction2, j, l));
    }
    if (1..=5).contains(&l) {
        return Ok(MembershipVerdict::excluded(Restriction3, j, l));
    }
    let pow3 = |e: u32| num_traits::pow(BigInt::from(3), e as usize);

    // |d| / (4·3^l) with every other prime intact, for the even clauses
    let even_cofactor = || -> Result<FactoredInteger> {
        let n = d.abs() / (BigInt::from(4) * pow3(l));
        factorize(&n)
    };

    Ok(match (l, j) {
        (0, 0) => match residue(d, 18) {
            1 => MembershipVerdict::member(
                T1OddCoprime,
                params().with("sign", BigInt::one()).with("m", linear_param(d, 1, 18)),
            ),
            17 => MembershipVerdict::member(
                T1OddCoprime,
                params().with("sign", -BigInt::one()).with("m", linear_param(&-d, 1, 18)),
            ),
            _ => MembershipVerdict::excluded(T1OddResidue, j, l),
        },
        (0, _) => {
            let n = even_cofactor()?;
            match divisor_with_residue(&n, 9, &PM4_MOD9, Some(&PM4_MOD9)) {
                Some(e) => {
                    let f = n.value() / &e;
                    let (a, sa) = signed_toward(&e, 9, 4);
                    let (b, sb) = signed_toward(&f, 9, 4);
                    MembershipVerdict::member(
                        T1EvenCoprime,
                        params()
                            .with("sign", &s.sign * sa * sb)
                            .with("m", linear_param(&a, 4, 9))
                            .with("k", linear_param(&b, 4, 9)),
                    )
                }
                None => MembershipVerdict::excluded(T1EvenNoSplit, j, l),
            }
        }
        (6, 0) => {
            let c: BigInt = d / pow3(6);
            let (t, sign) = signed_toward(&c, 6, 1);
            MembershipVerdict::member(
                T1Odd3p6,
                params().with("sign", sign).with("m", linear_param(&t, 1, 6)),
            )
        }
        (6, _) => {
            let n = even_cofactor()?;
            match divisor_with_residue(&n, 9, &PM4_MOD9, None) {
                Some(e) => {
                    let g = n.value() / &e;
                    let (a, sa) = signed_toward(&e, 9, 4);
                    let (b, sb) = signed_toward(&g, 3, 1);
                    MembershipVerdict::member(
                        T1Even3p6,
                        params()
                            .with("sign", &s.sign * sa * sb)
                            .with("m", linear_param(&b, 1, 3))
                            .with("k", linear_param(&a, 4, 9)),
                    )
                }
                None => MembershipVerdict::excluded(T1Even3p6NoDivisor, j, l),
            }
        }
        (7, 0) => {
            let core = factorize(&s.core)?;
            match type1_primes(&core).first() {
                Some(p) => {
                    let q: BigInt = d / (pow3(7) * p);
                    MembershipVerdict::member(
                        T2OddType1,
                        params().with("p", p.clone()).with("m", linear_param(&q, 1, 2)),
                    )
                }
                None => MembershipVerdict::excluded(T2OddNoType1, j, l),
            }
        }
        (7, _) => decide_z3x6_even_seven(d, &s)?,
        (_, 0) => {
            let q: BigInt = d / pow3(8);
            MembershipVerdict::member(T1Odd3p8, params().with("m", linear_param(&q, 1, 2)))
        }
        (8..=11, _) => {
            let n = even_cofactor()?;
            match divisor_with_residue(&n, 9, &PM4_MOD9, None) {
                Some(e) => {
                    let (a, _) = signed_toward(&e, 9, 4);
                    let m = d / (BigInt::from(4) * pow3(8) * &a);
                    MembershipVerdict::member(
                        T1Even3p8,
                        params().with("m", m).with("k", linear_param(&a, 4, 9)),
                    )
                }
                None => MembershipVerdict::excluded(T1Even3p8NoDivisor, j, l),
            }
        }
        _ => MembershipVerdict::member(
            T1Even3p12,
            params().with("m", d / (BigInt::from(4) * pow3(12))),
        ),
    })
}

/// The even `3⁷ ‖ D` clauses, tried in order 2⁶, (8), (9), (10), (11).
fn decide_z3x6_even_seven(d: &BigInt, s: &Split) -> Result<MembershipVerdict> {
    use Form::*;
    let base = num_traits::pow(BigInt::from(3), 7);
    if s.v2 >= 6 {
        let m = d / (&base * 64);
        return Ok(MembershipVerdict::member(T2Even2p6, params().with("m", m)));
    }
    let core = factorize(&s.core)?;
    if s.v2 == 4 {
        if let Some(e) = divisor_with_residue(&core, 18, &PM7_MOD18, None) {
            let (t, _) = signed_toward(&e, 18, 7);
            let q: BigInt = d / (&base * 16 * &t);
            return Ok(MembershipVerdict::member(
                T2EvenNice,
                params().with("m", linear_param(&q, 1, 2)).with("k", linear_param(&t, 7, 18)),
            ));
        }
    }
    // u = |d| / (4·3⁷) keeps the surplus powers of two
    let u = {
        let mut f = core.clone();
        if s.v2 > 2 {
            f.factors.insert(0, (BigInt::from(2), s.v2 - 2));
        }
        f
    };
    let t1 = type1_primes(&core);
    for p in &t1 {
        let rest = u.divide_prime(p);
        if let Some(e) = divisor_with_residue(&rest, 9, &PM4_MOD9, None) {
            let (t, _) = signed_toward(&e, 9, 4);
            let m = d / (&base * 4 * &t * p);
            return Ok(MembershipVerdict::member(
                T2EvenTypeA,
                params().with("p", p.clone()).with("m", m).with("k", linear_param(&t, 4, 9)),
            ));
        }
    }
    for p in t1.iter().filter(|p| residue(p, 18) == 7) {
        let rest = u.divide_prime(p);
        if let Some(e) = divisor_with_residue(&rest, 9, &PM2_MOD9, None) {
            let (t, _) = signed_toward(&e, 9, 2);
            let m = d / (&base * 4 * &t * p);
            return Ok(MembershipVerdict::member(
                T2EvenTypeB,
                params().with("p", p.clone()).with("m", m).with("k", linear_param(&t, 2, 9)),
            ));
        }
    }
    if let Some(p) = t1.iter().find(|p| residue(p, 18) == 13) {
        let m = d / (&base * 4 * p);
        return Ok(MembershipVerdict::member(
            T2EvenTypeC,
            params().with("p", p.clone()).with("m", m),
        ));
    }
    Ok(MembershipVerdict::excluded(T2EvenUnmatched, s.v2, s.v3))
}
