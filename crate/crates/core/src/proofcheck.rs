//! Finite re-checks of the polynomial congruences behind the ℤ₁₈ and ℤ₃×ℤ₆
//! impossibility arguments.
//!
//! Every identity is a congruence in `ℤ[y]/(y⁶+y³+1)` whose coefficients are
//! integer polynomials in the free symbols, so its truth modulo `M` depends
//! only on the symbols modulo `M`; enumerating all residues is a proof.

use serde::Serialize;

/// Element of `(ℤ/M)[y]/(y⁶+y³+1)`.
type Poly = [i64; 6];

fn reduce(coeffs: &[i64], modulus: i64) -> Poly {
    let mut r = coeffs.to_vec();
    for d in (6..r.len()).rev() {
        let c = r[d];
        if c != 0 {
            r[d] = 0;
            r[d - 3] -= c;
            r[d - 6] -= c;
        }
    }
    let mut out = [0; 6];
    for (o, v) in out.iter_mut().zip(r) {
        *o = v.rem_euclid(modulus);
    }
    out
}

fn mul(a: &Poly, b: &Poly, modulus: i64) -> Poly {
    let mut r = [0i64; 11];
    for (i, &u) in a.iter().enumerate() {
        for (j, &v) in b.iter().enumerate() {
            r[i + j] += u * v;
        }
    }
    reduce(&r, modulus)
}

/// `f(y^k)` for a dense polynomial `f`.
fn substitute(f: &[i64], k: usize, modulus: i64) -> Poly {
    let mut r = vec![0i64; k * f.len()];
    for (i, &c) in f.iter().enumerate() {
        r[i * k] += c;
    }
    reduce(&r, modulus)
}

fn add(ps: &[&[i64]]) -> Vec<i64> {
    let n = ps.iter().map(|p| p.len()).max().unwrap_or(0);
    let mut r = vec![0; n];
    for p in ps {
        for (i, c) in p.iter().enumerate() {
            r[i] += c;
        }
    }
    r
}

fn scale(c: i64, p: &[i64]) -> Vec<i64> {
    p.iter().map(|v| c * v).collect()
}

fn pmul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, u) in a.iter().enumerate() {
        for (j, v) in b.iter().enumerate() {
            r[i + j] += u * v;
        }
    }
    r
}

/// `f(y) f(y⁴) f(y⁷)`
fn triple(f: &[i64], modulus: i64) -> Poly {
    let a = substitute(f, 1, modulus);
    let b = substitute(f, 4, modulus);
    let c = substitute(f, 7, modulus);
    mul(&mul(&a, &b, modulus), &c, modulus)
}

const Y_MINUS_1: [i64; 2] = [-1, 1];
const PHI3: [i64; 3] = [1, 1, 1];
const Y3_MINUS_1: [i64; 4] = [-1, 0, 0, 1];
const Y3: [i64; 4] = [0, 0, 0, 1];

/// Whether a check runs the true identity or a deliberately corrupted one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Template {
    Faithful,
    Mutated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub template: Template,
    pub modulus: i64,
    pub cases: u64,
    pub pass: bool,
    /// Free-symbol assignment of the first failing case.
    pub counterexample: Option<Vec<(String, i64)>>,
    pub reduction: String,
}

struct Run {
    cases: u64,
    counterexample: Option<Vec<(String, i64)>>,
}

impl Run {
    fn new() -> Self {
        Run { cases: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> Vec<(String, i64)>) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(case());
        }
    }

    fn report(self, identity: &str, template: Template, modulus: i64, reduction: &str) -> IdentityReport {
        IdentityReport {
            identity: identity.into(),
            template,
            modulus,
            cases: self.cases,
            pass: self.counterexample.is_none(),
            counterexample: self.counterexample,
            reduction: reduction.into(),
        }
    }
}

fn named(pairs: &[(&str, i64)]) -> Vec<(String, i64)> {
    pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect()
}

/// `F₁(y)F₁(y⁴)F₁(y⁷) ≡ (y³−1)(1+3h₀(h₀−1)) − 3h₀³y³ (mod 9)` for
/// `F₁ = y − 1 + h₀Φ(y) + (y³ − 1)(h₁ + h₂(y − 1))`.
pub fn f1_case(h0: i64, h1: i64, h2: i64, template: Template) -> bool {
    let m = 9;
    let tail = pmul(&Y3_MINUS_1, &add(&[&[h1], &scale(h2, &Y_MINUS_1)]));
    let f1 = add(&[&Y_MINUS_1, &scale(h0, &PHI3), &tail]);
    let mut rhs = scale(1 + 3 * h0 * (h0 - 1), &Y3_MINUS_1);
    if template == Template::Faithful {
        rhs = add(&[&rhs, &scale(-3 * h0.pow(3), &Y3)]);
    }
    triple(&f1, m) == reduce(&rhs, m)
}

pub fn check_f1_identity_with(template: Template) -> IdentityReport {
    let mut run = Run::new();
    for h0 in 0..9 {
        for h1 in 0..9 {
            for h2 in 0..9 {
                run.record(f1_case(h0, h1, h2, template), || {
                    named(&[("h0", h0), ("h1", h1), ("h2", h2)])
                });
            }
        }
    }
    run.report(
        "F1",
        template,
        9,
        "coefficients are integer polynomials in h0, h1, h2; the congruence mod 9 depends only on h mod 9",
    )
}

pub fn check_f1_identity() -> IdentityReport {
    check_f1_identity_with(Template::Faithful)
}

/// `λ₁ = 1 + b₂(y−1)² + b₃(y−1)³` (branch 0) or `−y + …` (branch 1), with
/// product `1` resp. `−y³`.
fn lambda(branch: u8, b2: i64, b3: i64) -> Vec<i64> {
    let lead: &[i64] = if branch == 0 { &[1] } else { &[0, -1] };
    let sq = pmul(&Y_MINUS_1, &Y_MINUS_1);
    let cube = pmul(&sq, &Y_MINUS_1);
    add(&[lead, &scale(b2, &sq), &scale(b3, &cube)])
}

const LAMBDA_MODULUS: i64 = 3;

pub fn lambda_case(branch: u8, b2: i64, b3: i64, template: Template) -> bool {
    let m = LAMBDA_MODULUS;
    let expected: &[i64] = match (branch, template) {
        (0, _) => &[1],
        (_, Template::Faithful) => &[0, 0, 0, -1],
        (_, Template::Mutated) => &[0, 0, 0, 1],
    };
    triple(&lambda(branch, b2, b3), m) == reduce(expected, m)
}

/// Enumerates `(b₂, b₃) ∈ (ℤ/6)²` for both branches and asserts the
/// congruence mod 3.
pub fn check_lambda_identity_with(template: Template) -> IdentityReport {
    let mut run = Run::new();
    for branch in 0..2u8 {
        for b2 in 0..6 {
            for b3 in 0..6 {
                run.record(lambda_case(branch, b2, b3, template), || {
                    named(&[("branch", branch as i64), ("b2", b2), ("b3", b3)])
                });
            }
        }
    }
    run.report(
        "lambda",
        template,
        LAMBDA_MODULUS,
        "b2, b3 range over Z/6 as stated, but the congruence is asserted mod 3: it fails mod 2 \
         (branch 0, b2 = 0, b3 = 1 gives 1 + y^3), and only the residue mod 3 is used downstream",
    )
}

pub fn check_lambda_identity() -> IdentityReport {
    check_lambda_identity_with(Template::Faithful)
}

/// The cyclic sum `F(y)λ(y⁷)λ(y⁴) + F(y⁷)λ(y⁴)λ(y) + F(y⁴)λ(y⁷)λ(y)`.
fn s2_sum(f: &[i64], lam: &[i64], template: Template, m: i64) -> Poly {
    let fs = |k| substitute(f, k, m);
    let ls = |k| substitute(lam, k, m);
    let mut terms = vec![
        mul(&mul(&fs(1), &ls(7), m), &ls(4), m),
        mul(&mul(&fs(7), &ls(4), m), &ls(1), m),
    ];
    if template == Template::Faithful {
        terms.push(mul(&mul(&fs(4), &ls(7), m), &ls(1), m));
    }
    sum(&terms, m)
}

/// `F(y)F(y⁷)λ(y⁴) + F(y)F(y⁴)λ(y⁷) + F(y⁴)F(y⁷)λ(y)`.
fn s3_sum(f: &[i64], lam: &[i64], template: Template, m: i64) -> Poly {
    let fs = |k| substitute(f, k, m);
    let ls = |k| substitute(lam, k, m);
    let mut terms = vec![
        mul(&mul(&fs(1), &fs(7), m), &ls(4), m),
        mul(&mul(&fs(1), &fs(4), m), &ls(7), m),
    ];
    if template == Template::Faithful {
        terms.push(mul(&mul(&fs(4), &fs(7), m), &ls(1), m));
    }
    sum(&terms, m)
}

fn sum(terms: &[Poly], m: i64) -> Poly {
    let mut out = [0; 6];
    for t in terms {
        for (o, v) in out.iter_mut().zip(t) {
            *o = (*o + v).rem_euclid(m);
        }
    }
    out
}

fn lambda_lead(branch: u8) -> &'static [i64] {
    if branch == 0 {
        &[1]
    } else {
        &[0, -1]
    }
}

/// `F₂ = y − 1 + h₀Φ(y) + h₁(y³−1)`, `λ₂ = ±unit + b₂(y−1)²`.
pub fn s2_case(h0: i64, h1: i64, b2: i64, branch: u8, template: Template) -> bool {
    let f2 = add(&[&Y_MINUS_1, &scale(h0, &PHI3), &scale(h1, &Y3_MINUS_1)]);
    let lam = add(&[lambda_lead(branch), &scale(b2, &pmul(&Y_MINUS_1, &Y_MINUS_1))]);
    s2_sum(&f2, &lam, template, 3) == [0; 6]
}

/// `F₃ = y − 1 + h₀Φ(y)`, `λ₃ = 1` or `−y`.
pub fn s3_case(h0: i64, branch: u8, template: Template) -> bool {
    let f3 = add(&[&Y_MINUS_1, &scale(h0, &PHI3)]);
    s3_sum(&f3, lambda_lead(branch), template, 3) == [0; 6]
}

pub fn check_s2_s3_identities_with(template: Template) -> IdentityReport {
    let mut run = Run::new();
    for branch in 0..2u8 {
        for h0 in 0..3 {
            for h1 in 0..3 {
                for b2 in 0..3 {
                    run.record(s2_case(h0, h1, b2, branch, template), || {
                        named(&[("s", 2), ("branch", branch as i64), ("h0", h0), ("h1", h1), ("b2", b2)])
                    });
                }
            }
            run.record(s3_case(h0, branch, template), || {
                named(&[("s", 3), ("branch", branch as i64), ("h0", h0)])
            });
        }
    }
    run.report(
        "s2_s3",
        template,
        3,
        "both cyclic sums have coefficients polynomial in h0, h1, b2; vanishing mod 3 depends only on their residues mod 3",
    )
}

pub fn check_s2_s3_identities() -> IdentityReport {
    check_s2_s3_identities_with(Template::Faithful)
}

pub const IDENTITIES: [&str; 3] = ["F1", "lambda", "s2_s3"];

/// Runs one identity by id.
pub fn check(identity: &str, template: Template) -> Option<IdentityReport> {
    Some(match identity {
        "F1" => check_f1_identity_with(template),
        "lambda" => check_lambda_identity_with(template),
        "s2_s3" => check_s2_s3_identities_with(template),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Template::*;

    #[test]
    fn faithful_pass() {
        let r = check_f1_identity();
        assert!(r.pass);
        assert_eq!(r.cases, 729);
        let r = check_lambda_identity();
        assert!(r.pass);
        assert_eq!(r.cases, 72);
        assert!(check_s2_s3_identities().pass);
    }

    #[test]
    fn mutations_fail() {
        for id in IDENTITIES {
            let r = check(id, Mutated).unwrap();
            assert!(!r.pass, "{id}");
            assert!(r.counterexample.is_some());
        }
    }

    #[test]
    fn single_cases() {
        assert!(f1_case(1, 0, 0, Faithful));
        assert!(lambda_case(0, 0, 0, Faithful));
        assert!(s3_case(1, 0, Faithful));
    }

    #[test]
    fn lambda_fails_mod_six() {
        let t = triple(&lambda(0, 0, 1), 2);
        assert_ne!(t, reduce(&[1], 2));
    }
}
