//! Explicit elements realising determinants: the closed-form families, their
//! composition, and a bounded search for the ℤ₁₈ cases no family covers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::factor::{factorize, split_valuation};

use crate::groupring::{
    build_from_expression, crt_circulant, det_characters, det_matrix_oracle, det_split_small,
    GroupId, GroupRingElement, Params, ORDER,
};
use crate::membership::{decide, Form, MembershipVerdict};
use crate::primeclass::{lemma6_element, represent_lemma6, represent_type1};

/// Default absolute search budget: only the first this-many elements of the
/// search order are considered.
pub const DEFAULT_BUDGET: u64 = 400_000;

pub struct WitnessFamily {
    pub id: &'static str,
    pub group: GroupId,
    pub params: &'static [char],
    pub template: &'static str,
    /// The claimed determinant, as text.
    pub claim: &'static str,
    claimed: fn(&Params) -> BigInt,
}

impl std::fmt::Debug for WitnessFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WitnessFamily").field("id", &self.id).field("group", &self.group).finish()
    }
}

impl WitnessFamily {
    pub fn claimed(&self, params: &Params) -> Result<BigInt> {
        for c in self.params {
            if !params.contains_key(c) {
                return Err(Error::PreconditionViolated(format!(
                    "family {} needs parameter {c}",
                    self.id
                )));
            }
        }
        Ok((self.claimed)(params))
    }
}

fn get(p: &Params, c: char) -> BigInt {
    p[&c].clone()
}

fn pw(b: u32, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(b), e)
}

/// `N(2(1+3B) + 3(1+2A)ω)`
fn type1_norm(p: &Params) -> BigInt {
    let (a, b) = (get(p, 'A'), get(p, 'B'));
    EisensteinInt::new((b * 3 + 1) * 2, (a * 2 + 1) * 3).norm()
}

fn lemma6_norm(p: &Params, p_mod_9: u64) -> BigInt {
    lemma6_element(p_mod_9, &get(p, 'A'), &get(p, 'B')).norm()
}


static FAMILIES: &[WitnessFamily] = &[
    WitnessFamily {
        id: "W1",
        group: GroupId::Z3xZ6,
        params: &['m'],
        template: "1+(1+x)mΦ(y)Φ(z)",
        claim: "1 + 18m",
        claimed: |p| get(p, 'm') * 18 + 1,
    },
    WitnessFamily {
        id: "WS",
        group: GroupId::Z3xZ6,
        params: &[],
        template: "x",
        claim: "-1",
        claimed: |_| -BigInt::one(),
    },
    WitnessFamily {
        id: "W2",
        group: GroupId::Z3xZ6,
        params: &['m', 'k'],
        template: "-1+(1+m(x+1)+k(1-x))Φ(y)Φ(z)",
        claim: "2^2 (4 + 9m)(4 + 9k)",
        claimed: |p| BigInt::from(4) * (get(p, 'm') * 9 + 4) * (get(p, 'k') * 9 + 4),
    },
    WitnessFamily {
        id: "W3",
        group: GroupId::Z3xZ6,
        params: &['m'],
        template: "1+(x+1)y+m(x+1)Φ(y)Φ(z)",
        claim: "3^6 (6m + 1)",
        claimed: |p| pw(3, 6) * (get(p, 'm') * 6 + 1),
    },
    WitnessFamily {
        id: "W4",
        group: GroupId::Z3xZ6,
        params: &['m'],
        template: "Φ(z)+y(1+z)+x(Φ(z)+y)+m(1+x)Φ(y)Φ(z)",
        claim: "3^8 (2m + 1)",
        claimed: |p| pw(3, 8) * (get(p, 'm') * 2 + 1),
    },
    WitnessFamily {
        id: "W5",
        group: GroupId::Z3xZ6,
        params: &['m', 'k'],
        template: "1+(1+x)y-((x+1)m+(1-x)k+1)Φ(y)Φ(z)",
        claim: "2^2 3^6 (3m + 1)(9k + 4)",
        claimed: |p| pw(3, 6) * 4 * (get(p, 'm') * 3 + 1) * (get(p, 'k') * 9 + 4),
    },
    WitnessFamily {
        id: "W6",
        group: GroupId::Z3xZ6,
        params: &['m', 'k'],
        template: "yz^2+y^2Φ(z)-x(Φ(z)+yz)+(m(x+1)+k(1-x))Φ(y)Φ(z)",
        claim: "2^2 3^8 m (4 + 9k)",
        claimed: |p| pw(3, 8) * 4 * get(p, 'm') * (get(p, 'k') * 9 + 4),
    },
    WitnessFamily {
        id: "W7",
        group: GroupId::Z3xZ6,
        params: &['m'],
        template: "1+2y-(1+m(1+x))Φ(y)Φ(z)",
        claim: "2^2 3^12 (1 + 3m)",
        claimed: |p| pw(3, 12) * 4 * (get(p, 'm') * 3 + 1),
    },
    WitnessFamily {
        id: "W8",
        group: GroupId::Z3xZ6,
        params: &['m'],
        template: "Φ(z)(1+y)-x(1+z-yz^2-y^2z)+m(1+x)Φ(y)Φ(z)",
        claim: "2^2 3^13 (1 + 3m)",
        claimed: |p| pw(3, 13) * 4 * (get(p, 'm') * 3 + 1),
    },
    WitnessFamily {
        id: "W9",
        group: GroupId::Z3xZ6,
        params: &['m'],
        template: "1+2y-yΦ(z)+((1-x)+m(x+1))Φ(y)Φ(z)",
        claim: "2^2 3^14 m",
        claimed: |p| pw(3, 14) * 4 * get(p, 'm'),
    },
    WitnessFamily {
        id: "W10",
        group: GroupId::Z3xZ6,
        params: &['A', 'B', 'm'],
        template: "-xz+(1+x)(Φ(z)+y(1+z)+Φ(z)(1-y)(Ay+B)+mΦ(y)Φ(z))",
        claim: "3^7 (2m + 1) p, p = N(2(1+3B) + 3(1+2A)ω)",
        claimed: |p| pw(3, 7) * (get(p, 'm') * 2 + 1) * type1_norm(p),
    },
    WitnessFamily {
        id: "W11",
        group: GroupId::Z3xZ6,
        params: &['m'],
        template: "1+y-(1+x)y^2z^2+(1+x)mΦ(y)Φ(z)",
        claim: "3^7 2^6 m",
        claimed: |p| pw(3, 7) * 64 * get(p, 'm'),
    },
    WitnessFamily {
        id: "W12",
        group: GroupId::Z3xZ6,
        params: &['m', 'k'],
        template: "1+y-(1+x)y^2z^2-(1+(1+x)m+(1-x)k)Φ(y)Φ(z)",
        claim: "3^7 2^4 (2m + 1)(7 + 18k)",
        claimed: |p| pw(3, 7) * 16 * (get(p, 'm') * 2 + 1) * (get(p, 'k') * 18 + 7),
    },
    WitnessFamily {
        id: "W13",
        group: GroupId::Z3xZ6,
        params: &['A', 'B', 'm', 'k'],
        template: "-xz+(1+x)(Φ(z)+y(1+z)+Φ(z)(1-y)(Ay+B))-(1+m(1+x)+k(1-x))Φ(y)Φ(z)",
        claim: "3^7 2^2 m (4 + 9k) p, p = N(2(1+3B) + 3(1+2A)ω)",
        claimed: |p| pw(3, 7) * 4 * get(p, 'm') * (get(p, 'k') * 9 + 4) * type1_norm(p),
    },
    WitnessFamily {
        id: "W14",
        group: GroupId::Z3xZ6,
        params: &['A', 'B', 'm', 'k'],
        template: "x+(1+x)z-zΦ(y)-((1+x)m+(1-x)k)Φ(y)Φ(z)+(1-x)Φ(y)(z-1)(Az+B)",
        claim: "3^7 2^2 m (2 + 9k) p, p = N(-1 - 3ω + 6(ω-1)(Aω+B))",
        claimed: |p| pw(3, 7) * 4 * get(p, 'm') * (get(p, 'k') * 9 + 2) * lemma6_norm(p, 7),
    },
    WitnessFamily {
        id: "W15",
        group: GroupId::Z3xZ6,
        params: &['A', 'B', 'm'],
        template: "1+(1+x)z-zΦ(y)-(1+x)mΦ(y)Φ(z)+(1-x)Φ(y)(z-1)(Az+B)",
        claim: "3^7 2^2 m p, p = N(1 - 3ω + 6(ω-1)(Aω+B))",
        claimed: |p| pw(3, 7) * 4 * get(p, 'm') * lemma6_norm(p, 4),
    },
    WitnessFamily {
        id: "ZS",
        group: GroupId::Z18,
        params: &[],
        template: "x",
        claim: "-1",
        claimed: |_| -BigInt::one(),
    },
    WitnessFamily {
        id: "Z1a",
        group: GroupId::Z18,
        params: &[],
        template: "1+y",
        claim: "2^2",
        claimed: |_| BigInt::from(4),
    },
    WitnessFamily {
        id: "Z1b",
        group: GroupId::Z18,
        params: &[],
        template: "1+(1+x)y+y^2",
        claim: "2^3",
        claimed: |_| BigInt::from(8),
    },
    WitnessFamily {
        id: "Z2",
        group: GroupId::Z18,
        params: &['m'],
        template: "(1+x)+y^2+xy^3+y^4+xy^5+y^6+xy^7+y^8+m(1+x)(y^9-1)/(y-1)",
        claim: "3^4 (2m + 1)",
        claimed: |p| pw(3, 4) * (get(p, 'm') * 2 + 1),
    },
    WitnessFamily {
        id: "Z3",
        group: GroupId::Z18,
        params: &['A', 'B'],
        template: "x(1+y+y^2-y^5-y^8+x(1-y-y^2+y^4+y^6+y^7)-(1+x)(Ay+B)(y-1)(1+y^3+y^6))",
        claim: "3^3 p, p = N(2(1+3B) + 3(1+2A)ω)",
        claimed: |p| BigInt::from(27) * type1_norm(p),
    },
    WitnessFamily {
        id: "Z4",
        group: GroupId::Z18,
        params: &[],
        template: "1+y+y^2-y^8+x(y+y^3+y^6-y^7-y^8)",
        claim: "2^4 3^3",
        claimed: |_| BigInt::from(16 * 27),
    },
    WitnessFamily {
        id: "N1",
        group: GroupId::Z18,
        params: &['k'],
        template: "Σ_{i<k} g^i, g = xy",
        claim: "k, gcd(k, 6) = 1, k > 0",
        claimed: |p| get(p, 'k'),
    },
    WitnessFamily {
        id: "zero",
        group: GroupId::Z3xZ6,
        params: &[],
        template: "1+x",
        claim: "0",
        claimed: |_| BigInt::zero(),
    },
    WitnessFamily {
        id: "zero18",
        group: GroupId::Z18,
        params: &[],
        template: "1+x",
        claim: "0",
        claimed: |_| BigInt::zero(),
    },
];

pub fn families() -> &'static [WitnessFamily] {
    FAMILIES
}

pub fn family(id: &str) -> Option<&'static WitnessFamily> {
    FAMILIES.iter().find(|f| f.id == id)
}

fn fam(id: &str) -> &'static WitnessFamily {
    family(id).expect("family table entry")
}

/// One step of a derivation: a family with its parameters, or a search hit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub family: String,
    pub params: Vec<(String, BigInt)>,
}

impl Serialize for DerivationStep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct P<'a>(&'a [(String, BigInt)]);
        impl Serialize for P<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(k, &v.to_string())?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("family", &self.family)?;
        m.serialize_entry("params", &P(&self.params))?;
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCertificate {
    pub element: GroupRingElement,
    #[serde(with = "crate::bigint_serde")]
    pub target: BigInt,
    pub derivation: Vec<DerivationStep>,
    pub verified: bool,
}

impl WitnessCertificate {
    /// Recomputes both determinants and checks them against the target.
    pub fn check(&self) -> bool {
        det_characters(&self.element).d == self.target && det_matrix_oracle(&self.element) == self.target
    }

    fn sealed(element: GroupRingElement, target: BigInt, derivation: Vec<DerivationStep>) -> Result<Self> {
        let mut c = WitnessCertificate { element, target, derivation, verified: false };
        let fast = det_characters(&c.element).d;
        let oracle = det_matrix_oracle(&c.element);
        if fast != c.target || oracle != c.target {
            let family = c.derivation.iter().map(|s| s.family.as_str()).collect::<Vec<_>>().join("*");
            let computed = if fast != c.target { fast } else { oracle };
            return Err(Error::VerificationFailed { family, claimed: c.target, computed });
        }
        c.verified = true;
        Ok(c)
    }

    pub fn identity(group: GroupId) -> Self {
        WitnessCertificate {
            element: GroupRingElement::identity(group),
            target: BigInt::one(),
            derivation: Vec::new(),
            verified: true,
        }
    }
}

/// Builds the family's element and verifies it against the claimed value.
pub fn instantiate(family: &WitnessFamily, params: &Params) -> Result<WitnessCertificate> {
    let target = family.claimed(params)?;
    let element = if family.id == "N1" {
        newman_element(&get(params, 'k'))?
    } else {
        build_from_expression(family.group, family.template, params)?
    };
    let step = DerivationStep {
        family: family.id.to_string(),
        params: family.params.iter().map(|c| (c.to_string(), get(params, *c))).collect(),
    };
    WitnessCertificate::sealed(element, target, vec![step])
}

/// `Σ_{i<k} g^i` for a generator `g` of ℤ₁₈; its determinant is `k` when
/// `gcd(k, 18) = 1`.
fn newman_element(k: &BigInt) -> Result<GroupRingElement> {
    if !k.is_positive() || !k.gcd(&BigInt::from(6)).is_one() {
        return Err(Error::PreconditionViolated(format!("N1 needs k > 0 coprime to 6, got {k}")));
    }
    let (q, r) = k.div_rem(&BigInt::from(ORDER));
    let r = r.to_usize().unwrap_or(0);
    let circ: Vec<BigInt> = (0..ORDER).map(|n| if n < r { &q + 1 } else { q.clone() }).collect();
    crt_circulant(&circ)
}

pub fn compose(c1: &WitnessCertificate, c2: &WitnessCertificate) -> Result<WitnessCertificate> {
    if c1.element.group != c2.element.group {
        return Err(Error::GroupMismatch(c1.element.group, c2.element.group));
    }
    if !c1.verified || !c2.verified {
        return Err(Error::PreconditionViolated("compose needs verified certificates".into()));
    }
    let element = c1.element.multiply(&c2.element)?;
    let derivation = c1.derivation.iter().chain(&c2.derivation).cloned().collect();
    WitnessCertificate::sealed(element, &c1.target * &c2.target, derivation)
}

/// Multiplies unverified parts together, then verifies once.
fn product(group: GroupId, parts: Vec<WitnessCertificate>) -> Result<WitnessCertificate> {
    let mut element = GroupRingElement::identity(group);
    let mut target = BigInt::one();
    let mut derivation = Vec::new();
    for p in parts {
        element = element.multiply(&p.element)?;
        target *= p.target;
        derivation.extend(p.derivation);
    }
    WitnessCertificate::sealed(element, target, derivation)
}

fn params(pairs: &[(char, &BigInt)]) -> Params {
    pairs.iter().map(|(c, v)| (*c, (*v).clone())).collect()
}

fn sign_unit(group: GroupId) -> &'static WitnessFamily {
    match group {
        GroupId::Z3xZ6 => fam("WS"),
        GroupId::Z18 => fam("ZS"),
    }
}

/// Prepends the sign unit when `sign` is negative.
fn with_sign(group: GroupId, sign: &BigInt, mut parts: Vec<WitnessCertificate>) -> Result<Vec<WitnessCertificate>> {
    if sign.is_negative() {
        parts.insert(0, instantiate(sign_unit(group), &Params::new())?);
    }
    Ok(parts)
}

// ---------------------------------------------------------------------------
// Bounded search

/// Deterministic enumeration of sparse coefficient vectors in three phases:
/// `{0, 1}` patterns, then `{−1, 0, 1}` patterns using a `−1`, then
/// `{−2, …, 2}` patterns using a `±2`; within a phase by support weight, then
/// support (lexicographic), then coefficient pattern. The identity slot always
/// carries a positive coefficient, since `det(g·F) = ±det(F)`.
#[derive(Clone, Debug)]
struct SparseScan {
    phase: usize,
    weight: usize,
    support: Vec<usize>,
    pattern: u64,
    exhausted: bool,
}

const PHASES: [&[i64]; 3] = [&[1], &[1, -1], &[1, 2, -1, -2]];

impl SparseScan {
    fn new() -> Self {
        SparseScan { phase: 0, weight: 1, support: vec![0], pattern: 0, exhausted: false }
    }

    fn alphabet(&self) -> &'static [i64] {
        PHASES[self.phase]
    }

    /// Positive letters come first in each alphabet.
    fn positive(&self) -> u64 {
        self.alphabet().iter().filter(|&&v| v > 0).count() as u64
    }

    fn patterns(&self) -> u64 {
        let a = self.alphabet().len() as u64;
        self.positive() * a.pow(self.weight as u32 - 1)
    }

    fn decode(&self) -> [i64; ORDER] {
        let alpha = self.alphabet();
        let a = alpha.len() as u64;
        let pos = self.positive();
        let mut c = [0i64; ORDER];
        let mut t = self.pattern;
        c[self.support[0]] = alpha[(t % pos) as usize];
        t /= pos;
        for &slot in &self.support[1..] {
            c[slot] = alpha[(t % a) as usize];
            t /= a;
        }
        c
    }

    /// Whether the pattern belongs to this phase and not an earlier one.
    fn is_new(&self, c: &[i64; ORDER]) -> bool {
        match self.phase {
            0 => true,
            1 => c.contains(&-1),
            _ => c.iter().any(|v| v.abs() == 2),
        }
    }

    fn next_support(&mut self) -> bool {
        // combinations of {1..17} of size weight-1, lexicographic; slot 0 fixed
        let w = self.weight;
        let s = &mut self.support;
        let mut i = w - 1;
        while i >= 1 {
            if s[i] < ORDER - (w - i) {
                s[i] += 1;
                for j in i + 1..w {
                    s[j] = s[j - 1] + 1;
                }
                return true;
            }
            i -= 1;
        }
        false
    }

    fn advance(&mut self) {
        self.pattern += 1;
        if self.pattern < self.patterns() {
            return;
        }
        self.pattern = 0;
        if self.next_support() {
            return;
        }
        self.weight += 1;
        if self.weight > ORDER {
            self.weight = 1;
            self.phase += 1;
            if self.phase == PHASES.len() {
                self.exhausted = true;
                return;
            }
        }
        self.support = (0..self.weight).collect();
    }
}

impl Iterator for SparseScan {
    type Item = [i64; ORDER];

    fn next(&mut self) -> Option<[i64; ORDER]> {
        while !self.exhausted {
            let c = self.decode();
            let fresh = self.is_new(&c);
            self.advance();
            if fresh {
                return Some(c);
            }
        }
        None
    }
}

/// Largest `|det|` remembered by the scan.
const CACHE_CAP: u128 = 1 << 40;

/// First occurrence of each `|det|` in the scan order, with the scan resumable
/// from where it stopped. One writer at a time.
#[derive(Debug)]
pub struct SearchCache {
    group: GroupId,
    scan: SparseScan,
    scanned: u64,
    first: HashMap<u64, ([i64; ORDER], u64)>,
}

impl SearchCache {
    pub fn new(group: GroupId) -> Self {
        SearchCache { group, scan: SparseScan::new(), scanned: 0, first: HashMap::new() }
    }

    pub fn scanned(&self) -> u64 {
        self.scanned
    }

    /// Element with `|det| = n` among the first `budget` scanned elements,
    /// and its position in the scan.
    pub fn lookup(&mut self, n: u64, budget: u64) -> Option<([i64; ORDER], u64)> {
        if let Some(&(c, pos)) = self.first.get(&n) {
            return (pos < budget).then_some((c, pos));
        }
        while self.scanned < budget {
            let Some(c) = self.scan.next() else { break };
            let pos = self.scanned;
            self.scanned += 1;
            if let Some((d1, d2)) = det_split_small(self.group, &c) {
                if let Some(d) = d1.checked_mul(d2) {
                    let a = d.unsigned_abs();
                    if a != 0 && a <= CACHE_CAP {
                        let hit = self.first.entry(a as u64).or_insert((c, pos));
                        if a as u64 == n && hit.1 == pos {
                            return Some((c, pos));
                        }
                    }
                }
            }
        }
        None
    }
}

fn global_cache(group: GroupId) -> &'static Mutex<SearchCache> {
    static Z18: OnceLock<Mutex<SearchCache>> = OnceLock::new();
    static Z3X6: OnceLock<Mutex<SearchCache>> = OnceLock::new();
    let cell = match group {
        GroupId::Z18 => &Z18,
        GroupId::Z3xZ6 => &Z3X6,
    };
    cell.get_or_init(|| Mutex::new(SearchCache::new(group)))
}

/// Sparse-search certificate for `target` using the shared cache.
pub fn search_witness(target: &BigInt, group: GroupId, budget: u64) -> Result<WitnessCertificate> {
    let exhausted = || Error::WitnessSearchExhausted { target: target.clone(), budget };
    let n = target.abs().to_u64().filter(|&n| n != 0).ok_or_else(exhausted)?;
    let hit = global_cache(group).lock().unwrap_or_else(|e| e.into_inner()).lookup(n, budget);
    let (coeffs, pos) = hit.ok_or_else(exhausted)?;
    let mut element = GroupRingElement::from_i64(group, &coeffs)?;
    let mut derivation = Vec::new();
    if (det_characters(&element).d.is_negative()) != target.is_negative() {
        element = element.multiply(&instantiate(sign_unit(group), &Params::new())?.element)?;
        derivation.push(DerivationStep { family: sign_unit(group).id.into(), params: vec![] });
    }
    derivation.push(DerivationStep {
        family: "search".into(),
        params: vec![("det".into(), BigInt::from(n)), ("index".into(), BigInt::from(pos))],
    });
    WitnessCertificate::sealed(element, target.clone(), derivation)
}

/// Parts for a positive `n` coprime to 6 in ℤ₁₈: the whole value by search,
/// else prime by prime (search, then the geometric-series element).
fn coprime_parts_z18(n: &BigInt, budget: u64) -> Result<Vec<WitnessCertificate>> {
    if n.is_one() {
        return Ok(vec![]);
    }
    if let Ok(c) = search_witness(n, GroupId::Z18, budget) {
        return Ok(vec![c]);
    }
    let f = factorize(n)?;
    let mut parts = Vec::new();
    for (p, e) in &f.factors {
        let c = match search_witness(p, GroupId::Z18, budget) {
            Ok(c) => c,
            Err(_) => instantiate(fam("N1"), &params(&[('k', p)]))?,
        };
        parts.extend(std::iter::repeat_n(c, *e as usize));
    }
    Ok(parts)
}

/// `2^j` in ℤ₁₈ for `j ≥ 2`, from `1+y` (4) and `1+(1+x)y+y²` (8).
fn power_of_two_parts_z18(j: u32) -> Result<Vec<WitnessCertificate>> {
    debug_assert!(j >= 2);
    let mut parts = Vec::new();
    if j % 2 == 1 {
        parts.push(instantiate(fam("Z1b"), &Params::new())?);
    }
    let four = instantiate(fam("Z1a"), &Params::new())?;
    parts.extend(std::iter::repeat_n(four, ((j - 3 * (j % 2)) / 2) as usize));
    Ok(parts)
}

/// `sign · 2^j · s` with `s` odd, coprime to 3, `j = 0` or `j ≥ 2`.
fn unit_times_parts_z18(m: &BigInt, extra_twos: u32, budget: u64) -> Result<Vec<WitnessCertificate>> {
    let (j, s) = split_valuation(&m.abs(), 2);
    let j = j + extra_twos;
    let mut parts = if j > 0 { power_of_two_parts_z18(j)? } else { vec![] };
    parts.extend(coprime_parts_z18(&s, budget)?);
    with_sign(GroupId::Z18, &m.signum(), parts)
}

fn param(v: &MembershipVerdict, name: &str) -> BigInt {
    v.parameters.get(name).cloned().unwrap_or_default()
}

fn type1_ab(p: &BigInt) -> Result<(BigInt, BigInt)> {
    represent_type1(p)
}

/// A verified certificate for a member `d` of `S(group)`.
pub fn witness_for(d: &BigInt, group: GroupId, budget: u64) -> Result<WitnessCertificate> {
    let verdict = decide(d, group)?;
    if !verdict.in_set {
        return Err(Error::NotAMember { d: d.clone(), group });
    }
    let cert = match group {
        GroupId::Z3xZ6 => witness_z3x6(&verdict)?,
        GroupId::Z18 => witness_z18(&verdict, budget)?,
    };
    debug_assert_eq!(&cert.target, d);
    Ok(cert)
}

fn single(id: &str, p: &[(char, &BigInt)]) -> Result<Vec<WitnessCertificate>> {
    Ok(vec![instantiate(fam(id), &params(p))?])
}

fn witness_z3x6(v: &MembershipVerdict) -> Result<WitnessCertificate> {
    use Form::*;
    let g = GroupId::Z3xZ6;
    let (m, k, sign) = (param(v, "m"), param(v, "k"), v.parameters.get("sign").cloned().unwrap_or_else(BigInt::one));
    let parts = match v.form {
        Zero => single("zero", &[])?,
        T1OddCoprime => with_sign(g, &sign, single("W1", &[('m', &m)])?)?,
        T1EvenCoprime => with_sign(g, &sign, single("W2", &[('m', &m), ('k', &k)])?)?,
        T1Odd3p6 => with_sign(g, &sign, single("W3", &[('m', &m)])?)?,
        T1Odd3p8 => single("W4", &[('m', &m)])?,
        T1Even3p6 => with_sign(g, &sign, single("W5", &[('m', &m), ('k', &k)])?)?,
        T1Even3p8 => single("W6", &[('m', &m), ('k', &k)])?,
        T1Even3p12 => {
            // m = 3^(l-12) · rest
            let (e, rest) = split_valuation(&m.abs(), 3);
            let s = m.signum();
            match e {
                0 | 1 => {
                    let c = rest * &s;
                    let (t, sg) = if c.mod_floor(&BigInt::from(3)).is_one() { (c, BigInt::one()) } else { (-c, -BigInt::one()) };
                    let mm = (t - 1) / 3;
                    with_sign(g, &sg, single(if e == 0 { "W7" } else { "W8" }, &[('m', &mm)])?)?
                }
                _ => single("W9", &[('m', &(&m / 9))])?,
            }
        }
        T2OddType1 => {
            let (a, b) = type1_ab(&param(v, "p"))?;
            single("W10", &[('A', &a), ('B', &b), ('m', &m)])?
        }
        T2Even2p6 => single("W11", &[('m', &m)])?,
        T2EvenNice => single("W12", &[('m', &m), ('k', &k)])?,
        T2EvenTypeA => {
            let (a, b) = type1_ab(&param(v, "p"))?;
            single("W13", &[('A', &a), ('B', &b), ('m', &m), ('k', &k)])?
        }
        T2EvenTypeB => {
            let (a, b) = represent_lemma6(&param(v, "p"))?;
            single("W14", &[('A', &a), ('B', &b), ('m', &m), ('k', &k)])?
        }
        T2EvenTypeC => {
            let (a, b) = represent_lemma6(&param(v, "p"))?;
            single("W15", &[('A', &a), ('B', &b), ('m', &m)])?
        }
        other => return Err(Error::PreconditionViolated(format!("no ℤ₃×ℤ₆ family for {other}"))),
    };
    product(g, parts)
}

fn witness_z18(v: &MembershipVerdict, budget: u64) -> Result<WitnessCertificate> {
    use Form::*;
    let g = GroupId::Z18;
    let m = param(v, "m");
    let parts = match v.form {
        Zero => single("zero18", &[])?,
        T3Coprime => unit_times_parts_z18(&m, 0, budget)?,
        T3Even => unit_times_parts_z18(&m, 2, budget)?,
        T3Odd3p4 => single("Z2", &[('m', &m)])?,
        T3Even3p4 => {
            let (j, t) = split_valuation(&m.abs(), 2);
            let t = t * m.signum();
            let mm = (t - 1) / 2;
            let mut parts = single("Z2", &[('m', &mm)])?;
            parts.extend(power_of_two_parts_z18(j + 2)?);
            parts
        }
        T4OddType1 | T4EvenType1 => {
            let (a, b) = type1_ab(&param(v, "p"))?;
            let mut parts = single("Z3", &[('A', &a), ('B', &b)])?;
            let twos = if v.form == T4EvenType1 { 2 } else { 0 };
            parts.extend(unit_times_parts_z18(&m, twos, budget)?);
            parts
        }
        T4Even2p4 => {
            let mut parts = single("Z4", &[])?;
            parts.extend(unit_times_parts_z18(&m, 0, budget)?);
            parts
        }
        T4Even2p6 => {
            let mut parts = single("Z4", &[])?;
            parts.extend(unit_times_parts_z18(&m, 2, budget)?);
            parts
        }
        other => return Err(Error::PreconditionViolated(format!("no ℤ₁₈ family for {other}"))),
    };
    product(g, parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(id: &str, p: &[(char, i64)]) -> Result<WitnessCertificate> {
        let p: Params = p.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect();
        instantiate(family(id).unwrap(), &p)
    }

    #[test]
    fn spec_instances() {
        assert_eq!(inst("W1", &[('m', 1)]).unwrap().target, BigInt::from(19));
        assert_eq!(inst("WS", &[]).unwrap().target, BigInt::from(-1));
        assert_eq!(inst("Z3", &[('A', 0), ('B', 0)]).unwrap().target, BigInt::from(189));
        assert_eq!(inst("W11", &[('m', 1)]).unwrap().target, BigInt::from(139968));
        assert!(inst("W1", &[]).is_err());
    }

    #[test]
    fn every_family_small_params() {
        for f in families() {
            for (m, k) in [(0i64, 0i64), (1, 0), (0, 1), (2, -3), (-1, 2)] {
                let mut p: Params = Params::new();
                for c in f.params {
                    let v = match c {
                        'm' => m,
                        'k' if f.id == "N1" => 5 + 6 * (m + k).abs(),
                        'k' => k,
                        'A' => -1,
                        _ => 0,
                    };
                    p.insert(*c, BigInt::from(v));
                }
                let c = instantiate(f, &p).unwrap_or_else(|e| panic!("{} {p:?}: {e}", f.id));
                assert!(c.verified && c.check());
            }
        }
    }

    #[test]
    fn spec_witness_for() {
        let c = witness_for(&BigInt::from(19), GroupId::Z3xZ6, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.derivation[0].family, "W1");
        let c = witness_for(&BigInt::from(4), GroupId::Z18, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.derivation[0].family, "Z1a");
        let c = witness_for(&BigInt::from(189), GroupId::Z18, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.derivation[0].family, "Z3");
        let c = witness_for(&BigInt::from(5), GroupId::Z18, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.derivation.last().unwrap().family, "search");
        assert!(c.element.height() <= BigInt::from(2));
        assert!(matches!(
            witness_for(&BigInt::from(5), GroupId::Z3xZ6, DEFAULT_BUDGET),
            Err(Error::NotAMember { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let four = inst("Z1a", &[]).unwrap();
        let five = search_witness(&BigInt::from(5), GroupId::Z18, DEFAULT_BUDGET).unwrap();
        assert_eq!(compose(&four, &five).unwrap().target, BigInt::from(20));
        let neg = compose(&inst("WS", &[]).unwrap(), &inst("W1", &[('m', 1)]).unwrap()).unwrap();
        assert_eq!(neg.target, BigInt::from(-19));
        let id = WitnessCertificate::identity(GroupId::Z18);
        assert_eq!(compose(&id, &five).unwrap().target, BigInt::from(5));
        assert!(matches!(compose(&four, &neg), Err(Error::GroupMismatch(..))));
    }

    #[test]
    fn newman_backstop() {
        for k in [1i64, 5, 7, 11, 13, 17, 19, 25, 35, 1997] {
            assert_eq!(inst("N1", &[('k', k)]).unwrap().target, BigInt::from(k));
        }
        assert!(inst("N1", &[('k', 9)]).is_err());
    }

    #[test]
    fn search_exhausts() {
        let e = search_witness(&BigInt::from(5), GroupId::Z18, 1).unwrap_err();
        assert!(matches!(e, Error::WitnessSearchExhausted { .. }));
    }

    #[test]
    fn scan_has_no_repeats_at_low_weight() {
        let mut seen = std::collections::HashSet::new();
        for c in SparseScan::new().take(50_000) {
            assert!(seen.insert(c));
        }
    }
}
