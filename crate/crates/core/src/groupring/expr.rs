//! A small polynomial expression language for group-ring elements, e.g. `1 + (1+x)mΦ(y)Φ(z)` or
//! `(1+x)(y^9-1)/(y-1)`.
//!
//! Variables are `x`, `y`, `z`; any other single letter is a parameter looked
//! up in [`Params`]. `Φ(t)` (or `Phi(t)`) expands to `1 + t + t²`. Products may
//! be written with `*`, `·` or by juxtaposition. Division is only allowed by
//! `(v − 1)` for a variable `v`, and must be exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{GroupId, GroupRingElement};
use crate::error::{Error, Result};

pub type Params = BTreeMap<char, BigInt>;

/// Exponent vector (x, y, z) to coefficient, exponents not yet reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial(pub BTreeMap<[u32; 3], BigInt>);

impl Polynomial {
    fn constant(c: BigInt) -> Self {
        let mut p = Polynomial::default();
        if !c.is_zero() {
            p.0.insert([0, 0, 0], c);
        }
        p
    }

    fn var(v: usize) -> Self {
        let mut e = [0, 0, 0];
        e[v] = 1;
        let mut p = Polynomial::default();
        p.0.insert(e, BigInt::one());
        p
    }

    fn add_term(&mut self, e: [u32; 3], c: BigInt) {
        let slot = self.0.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    fn add(mut self, other: &Polynomial) -> Self {
        for (e, c) in &other.0 {
            self.add_term(*e, c.clone());
        }
        self
    }

    fn neg(self) -> Self {
        Polynomial(self.0.into_iter().map(|(e, c)| (e, -c)).collect())
    }

    fn mul(&self, other: &Polynomial) -> Self {
        let mut out = Polynomial::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = Polynomial::constant(BigInt::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides exactly by `(v − 1)` via synthetic division in `v`.
    fn div_by_var_minus_one(&self, v: usize) -> Result<Self> {
        // group by the other two exponents
        let mut columns: BTreeMap<[u32; 3], BTreeMap<u32, BigInt>> = BTreeMap::new();
        for (e, c) in &self.0 {
            let mut key = *e;
            key[v] = 0;
            columns.entry(key).or_default().insert(e[v], c.clone());
        }
        let mut out = Polynomial::default();
        for (key, col) in columns {
            let top = *col.keys().next_back().unwrap();
            let mut carry = BigInt::zero();
            for deg in (1..=top).rev() {
                carry += col.get(&deg).cloned().unwrap_or_default();
                let mut e = key;
                e[v] = deg - 1;
                out.add_term(e, carry.clone());
            }
            let rem = carry + col.get(&0).cloned().unwrap_or_default();
            if !rem.is_zero() {
                return Err(Error::MalformedExpression("division by (v - 1) is not exact".into()));
            }
        }
        Ok(out)
    }

    fn as_var_minus_one(&self) -> Option<usize> {
        if self.0.len() != 2 || self.0.get(&[0, 0, 0]) != Some(&BigInt::from(-1)) {
            return None;
        }
        (0..3).find(|&v| {
            let mut e = [0, 0, 0];
            e[v] = 1;
            self.0.get(&e) == Some(&BigInt::one())
        })
    }

    /// Folds exponents modulo the generator orders of `group`.
    pub fn into_element(self, group: GroupId) -> Result<GroupRingElement> {
        let mut out = GroupRingElement::zero(group);
        for (e, c) in self.0 {
            if group == GroupId::Z18 && e[2] != 0 {
                return Err(Error::MalformedExpression("z does not exist in z18".into()));
            }
            out.coeffs[group.index(e[0], e[1], e[2])] += c;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(char),
    Phi,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Sup(u32),
    LParen,
    RParen,
}

fn superscript(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|s| s == c).map(|p| p as u32)
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                out.push(Tok::Int(s.parse().unwrap()));
            }
            'Φ' => out.push(Tok::Phi),
            'P' if chars[i..].starts_with(&['P', 'h', 'i']) => {
                out.push(Tok::Phi);
                i += 2;
            }
            c if c.is_ascii_alphabetic() => out.push(Tok::Ident(c)),
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' | '×' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            c if superscript(c).is_some() => {
                let mut n = 0u32;
                while i < chars.len() {
                    match superscript(chars[i]) {
                        Some(d) => n = n * 10 + d,
                        None => break,
                    }
                    i += 1;
                }
                i -= 1;
                out.push(Tok::Sup(n));
            }
            other => {
                return Err(Error::MalformedExpression(format!("unexpected character {other:?}")))
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    params: &'a Params,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.bump() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::MalformedExpression(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let den = self.unary()?;
                    let v = den.as_var_minus_one().ok_or_else(|| {
                        Error::MalformedExpression("can only divide by (v - 1)".into())
                    })?;
                    acc = acc.div_by_var_minus_one(v)?;
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::Phi | Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let mut base = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Caret) => {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Int(n)) => {
                            let n: u32 = n.try_into().map_err(|_| {
                                Error::MalformedExpression("exponent too large".into())
                            })?;
                            base = base.pow(n);
                        }
                        t => {
                            return Err(Error::MalformedExpression(format!(
                                "expected integer exponent, found {t:?}"
                            )))
                        }
                    }
                }
                Some(Tok::Sup(n)) => {
                    let n = *n;
                    self.pos += 1;
                    base = base.pow(n);
                }
                _ => return Ok(base),
            }
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Polynomial::constant(n)),
            Some(Tok::Ident(c)) => match c {
                'x' => Ok(Polynomial::var(0)),
                'y' => Ok(Polynomial::var(1)),
                'z' => Ok(Polynomial::var(2)),
                p => self.params.get(&p).cloned().map(Polynomial::constant).ok_or_else(|| {
                    Error::MalformedExpression(format!("unbound parameter {p:?}"))
                }),
            },
            Some(Tok::Phi) => {
                self.expect(Tok::LParen)?;
                let t = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Polynomial::constant(BigInt::one()).add(&t).add(&t.mul(&t)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            t => Err(Error::MalformedExpression(format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse_polynomial(src: &str, params: &Params) -> Result<Polynomial> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::MalformedExpression("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, params };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::MalformedExpression(format!(
            "trailing input at token {}: {:?}",
            p.pos,
            p.toks[p.pos]
        )));
    }
    Ok(poly)
}

pub fn build_from_expression(group: GroupId, src: &str, params: &Params) -> Result<GroupRingElement> {
    parse_polynomial(src, params)?.into_element(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(g: GroupId, s: &str) -> GroupRingElement {
        build_from_expression(g, s, &Params::new()).unwrap()
    }

    #[test]
    fn w1_at_m_equals_one() {
        let e = build(GroupId::Z3xZ6, "1 + (1+x)·Φ(y)·Φ(z)");
        for i in 0..2 {
            for j in 0..3 {
                for k in 0..3 {
                    let expect = if (i, j, k) == (0, 0, 0) { 2 } else { 1 };
                    assert_eq!(*e.coeff(i, j, k), BigInt::from(expect), "({i},{j},{k})");
                }
            }
        }
        let mut params = Params::new();
        params.insert('m', BigInt::one());
        let same = build_from_expression(GroupId::Z3xZ6, "1+(1+x)mΦ(y)Φ(z)", &params).unwrap();
        assert_eq!(same, e);
    }

    #[test]
    fn phi_is_literal_in_z18() {
        let e = build(GroupId::Z18, "Φ(y)");
        let mut expect = vec![0i64; 18];
        expect[..3].copy_from_slice(&[1, 1, 1]);
        assert_eq!(e, GroupRingElement::from_i64(GroupId::Z18, &expect).unwrap());
        assert!(matches!(
            build_from_expression(GroupId::Z18, "Φ(z)", &Params::new()),
            Err(Error::MalformedExpression(_))
        ));
    }

    #[test]
    fn single_x() {
        assert_eq!(build(GroupId::Z3xZ6, "x"), GroupRingElement::monomial(GroupId::Z3xZ6, 1, 0, 0));
    }

    #[test]
    fn geometric_quotient() {
        let e = build(GroupId::Z18, "(y^9-1)/(y-1)");
        let mut expect = vec![0i64; 18];
        expect[..9].fill(1);
        assert_eq!(e, GroupRingElement::from_i64(GroupId::Z18, &expect).unwrap());
        assert!(build_from_expression(GroupId::Z18, "(y^2+1)/(y-1)", &Params::new()).is_err());
        assert!(build_from_expression(GroupId::Z18, "y/(y+1)", &Params::new()).is_err());
    }

    #[test]
    fn exponents_reduce() {
        assert_eq!(build(GroupId::Z3xZ6, "y^4 z^3 x^3"), build(GroupId::Z3xZ6, "xy"));
        assert_eq!(build(GroupId::Z18, "y¹⁰"), build(GroupId::Z18, "y"));
        assert_eq!(build(GroupId::Z3xZ6, "yz²"), build(GroupId::Z3xZ6, "y*z*z"));
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "1+", "(1+x", "x)", "q", "2^y", "1 $ 2", "Φ y"] {
            assert!(
                matches!(
                    build_from_expression(GroupId::Z3xZ6, bad, &Params::new()),
                    Err(Error::MalformedExpression(_))
                ),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn unary_minus_and_precedence() {
        assert_eq!(build(GroupId::Z18, "-y^2"), build(GroupId::Z18, "-(y*y)"));
        assert_eq!(build(GroupId::Z18, "2-3y+3y"), build(GroupId::Z18, "2"));
        assert_eq!(build(GroupId::Z18, "−x(1−y)"), build(GroupId::Z18, "xy - x"));
    }
}
