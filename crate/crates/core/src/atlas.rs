//! Sweeps over coefficient boxes: every element, or a seeded sample, with its
//! determinant, stored as line-delimited JSON and audited against the
//! membership decision.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::split_valuation;
use crate::groupring::{det_characters, det_split_small, GroupId, GroupRingElement, ORDER};
use crate::membership::{decide, restriction_screen};
use crate::scalar::residue;

/// Records produced per unit of parallel work; also the sampling stream size.
const CHUNK: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub group: GroupId,
    pub coeffs: [i64; ORDER],
    #[serde(with = "crate::bigint_serde")]
    pub d1: BigInt,
    #[serde(with = "crate::bigint_serde")]
    pub d2: BigInt,
    #[serde(with = "crate::bigint_serde")]
    pub d: BigInt,
}

impl AtlasRecord {
    pub fn evaluate(group: GroupId, coeffs: [i64; ORDER]) -> Self {
        let (d1, d2) = match det_split_small(group, &coeffs) {
            Some((a, b)) => (BigInt::from(a), BigInt::from(b)),
            None => {
                let e = GroupRingElement::from_i64(group, &coeffs).expect("18 coefficients");
                let s = det_characters(&e);
                (s.d1, s.d2)
            }
        };
        let d = &d1 * &d2;
        AtlasRecord { group, coeffs, d1, d2, d }
    }
}

/// Header line of an atlas file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasHeader {
    pub kind: String,
    pub group: GroupId,
    pub coeff_set: Vec<i64>,
    pub seed: Option<u64>,
    pub count: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// A sweep definition; the coefficient set is kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasSpec {
    pub group: GroupId,
    coeff_set: Vec<i64>,
    pub limit: Limit,
}

impl AtlasSpec {
    /// A sample at least as large as the whole box becomes exhaustive.
    pub fn new(group: GroupId, coeff_set: &[i64], limit: Limit) -> Result<Self> {
        let mut set = coeff_set.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return Err(Error::PreconditionViolated("empty coefficient set".into()));
        }
        let limit = match limit {
            Limit::Sample { count, .. } if box_size(set.len()).is_some_and(|n| count >= n) => Limit::Exhaustive,
            l => l,
        };
        if limit == Limit::Exhaustive && box_size(set.len()).is_none() {
            return Err(Error::PreconditionViolated(format!(
                "{}^18 elements is too many to enumerate",
                set.len()
            )));
        }
        Ok(AtlasSpec { group, coeff_set: set, limit })
    }

    pub fn coeff_set(&self) -> &[i64] {
        &self.coeff_set
    }

    pub fn count(&self) -> u64 {
        match self.limit {
            Limit::Exhaustive => box_size(self.coeff_set.len()).unwrap_or(u64::MAX),
            Limit::Sample { count, .. } => count,
        }
    }

    pub fn header(&self) -> AtlasHeader {
        AtlasHeader {
            kind: "header".into(),
            group: self.group,
            coeff_set: self.coeff_set.clone(),
            seed: match self.limit {
                Limit::Exhaustive => None,
                Limit::Sample { seed, .. } => Some(seed),
            },
            count: self.count(),
        }
    }

    /// Coefficients of record `n`: lexicographic digits for exhaustive runs,
    /// slot 0 most significant.
    fn lexicographic(&self, mut n: u64) -> [i64; ORDER] {
        let base = self.coeff_set.len() as u64;
        let mut c = [0; ORDER];
        for slot in (0..ORDER).rev() {
            c[slot] = self.coeff_set[(n % base) as usize];
            n /= base;
        }
        c
    }

    fn chunk(&self, index: u64) -> Vec<AtlasRecord> {
        let start = index * CHUNK;
        let end = (start + CHUNK).min(self.count());
        match self.limit {
            Limit::Exhaustive => {
                (start..end).map(|n| AtlasRecord::evaluate(self.group, self.lexicographic(n))).collect()
            }
            Limit::Sample { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index);
                (start..end)
                    .map(|_| {
                        let mut c = [0; ORDER];
                        for v in &mut c {
                            *v = self.coeff_set[rng.gen_range(0..self.coeff_set.len())];
                        }
                        AtlasRecord::evaluate(self.group, c)
                    })
                    .collect()
            }
        }
    }

    /// Feeds every record to `sink` in canonical order. Chunks are evaluated
    /// in parallel, a batch at a time; the order does not depend on the
    /// number of workers.
    pub fn run(&self, mut sink: impl FnMut(&AtlasRecord) -> Result<()>) -> Result<u64> {
        let chunks = self.count().div_ceil(CHUNK);
        let batch = (rayon::current_num_threads() as u64 * 4).max(1);
        let mut emitted = 0;
        let mut next = 0;
        while next < chunks {
            let hi = (next + batch).min(chunks);
            let done: Vec<Vec<AtlasRecord>> = (next..hi).into_par_iter().map(|i| self.chunk(i)).collect();
            for r in done.iter().flatten() {
                sink(r)?;
                emitted += 1;
            }
            next = hi;
        }
        Ok(emitted)
    }

    pub fn collect(&self) -> Vec<AtlasRecord> {
        let mut out = Vec::with_capacity(self.count().min(1 << 24) as usize);
        self.run(|r| {
            out.push(r.clone());
            Ok(())
        })
        .expect("collecting cannot fail");
        out
    }
}

fn box_size(base: usize) -> Option<u64> {
    (base as u64).checked_pow(ORDER as u32)
}

pub fn enumerate(group: GroupId, coeff_set: &[i64], limit: Limit) -> Result<Vec<AtlasRecord>> {
    Ok(AtlasSpec::new(group, coeff_set, limit)?.collect())
}

/// Writes a header and the records of `spec` as line-delimited JSON.
pub fn write_atlas(spec: &AtlasSpec, out: &mut impl Write) -> Result<u64> {
    writeln!(out, "{}", to_json(&spec.header())?)?;
    spec.run(|r| {
        writeln!(out, "{}", to_json(r)?)?;
        Ok(())
    })
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(|e| Error::Io(e.to_string()))
}

/// Reads an atlas file; the header line is optional.
pub fn read_atlas(input: impl BufRead) -> Result<(Option<AtlasHeader>, Vec<AtlasRecord>)> {
    let mut header = None;
    let mut records = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value =
            serde_json::from_str(&line).map_err(|e| Error::Io(format!("line {}: {e}", n + 1)))?;
        if v.get("kind").and_then(|k| k.as_str()) == Some("header") {
            header = Some(serde_json::from_value(v).map_err(|e| Error::Io(format!("line {}: {e}", n + 1)))?);
        } else {
            records.push(serde_json::from_value(v).map_err(|e| Error::Io(format!("line {}: {e}", n + 1)))?);
        }
    }
    Ok((header, records))
}

/// Concatenation, deduplicated by (group, coefficient vector), sorted by it.
pub fn merge(parts: impl IntoIterator<Item = Vec<AtlasRecord>>) -> Vec<AtlasRecord> {
    let mut all: Vec<AtlasRecord> = parts.into_iter().flatten().collect();
    all.sort_by(|a, b| (a.group.name(), a.coeffs).cmp(&(b.group.name(), b.coeffs)));
    all.dedup_by(|a, b| a.group == b.group && a.coeffs == b.coeffs);
    all
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub records: u64,
    pub distinct_values: u64,
    /// Record counts keyed by `v2=j,v3=l` of `|d|`, or `zero`.
    pub classes: BTreeMap<String, u64>,
    pub violations: Vec<String>,
}

fn class_key(d: &BigInt) -> String {
    if d.is_zero() {
        return "zero".into();
    }
    let (v2, rest) = split_valuation(&d.abs(), 2);
    let (v3, _) = split_valuation(&rest, 3);
    format!("v2={v2},v3={v3}")
}

/// Necessary conditions on a single character-branch product.
fn half_violation(group: GroupId, h: &BigInt) -> Option<String> {
    if h.is_zero() {
        return None;
    }
    match group {
        GroupId::Z18 => {
            (residue(h, 3) == 0 && residue(h, 27) != 0).then(|| format!("3 | {h} but 27 ∤ {h}"))
        }
        GroupId::Z3xZ6 => {
            let ok = residue(h, 729) == 0 || matches!(residue(h, 9), 1 | 8);
            (!ok).then(|| format!("{h} is neither 0 mod 3^6 nor ±1 mod 9"))
        }
    }
}

fn record_violations(r: &AtlasRecord) -> Vec<String> {
    let mut v = Vec::new();
    let fresh = AtlasRecord::evaluate(r.group, r.coeffs);
    if fresh.d1 != r.d1 || fresh.d2 != r.d2 || r.d != &r.d1 * &r.d2 {
        v.push(format!("stored determinants do not re-evaluate (got {}, {})", fresh.d1, fresh.d2));
    }
    if residue(&r.d1, 2) != residue(&r.d2, 2) {
        v.push("D1 and D2 differ in parity".into());
    }
    v.extend(half_violation(r.group, &r.d1));
    v.extend(half_violation(r.group, &r.d2));
    v
}

/// Checks every record against the screens and the decision procedure;
/// `Err(AuditViolation)` names the first offending record.
pub fn audit(records: &[AtlasRecord]) -> Result<AuditReport> {
    let report = audit_report(records)?;
    if let Some(first) = report.violations.first() {
        return Err(Error::AuditViolation(first.clone()));
    }
    Ok(report)
}

/// Like [`audit`], but returns the violations in the report.
pub fn audit_report(records: &[AtlasRecord]) -> Result<AuditReport> {
    let mut report = AuditReport { records: records.len() as u64, ..Default::default() };
    let per_record: Vec<(usize, Vec<String>)> = records
        .par_iter()
        .enumerate()
        .map(|(i, r)| (i, record_violations(r)))
        .filter(|(_, v)| !v.is_empty())
        .collect();

    let mut distinct: HashMap<(GroupId, BigInt), usize> = HashMap::new();
    for (i, r) in records.iter().enumerate() {
        distinct.entry((r.group, r.d.clone())).or_insert(i);
        *report.classes.entry(class_key(&r.d)).or_default() += 1;
    }
    report.distinct_values = distinct.len() as u64;
    let keys: Vec<_> = distinct.into_iter().collect();
    let decided: Vec<Result<Option<(usize, String)>>> = keys
        .par_iter()
        .map(|((g, d), i)| {
            let screens = restriction_screen(d, *g);
            if !screens.is_empty() {
                return Ok(Some((*i, format!("screen: {}", screens.join("; ")))));
            }
            let v = decide(d, *g)?;
            Ok((!v.in_set).then(|| (*i, format!("decided out ({})", v.form))))
        })
        .collect();

    let mut found: Vec<(usize, String)> = per_record
        .into_iter()
        .flat_map(|(i, vs)| vs.into_iter().map(move |v| (i, v)))
        .collect();
    for d in decided {
        found.extend(d?);
    }
    found.sort();
    report.violations = found
        .into_iter()
        .map(|(i, why)| format!("{why}: {}", to_json(&records[i]).unwrap_or_default()))
        .collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_first_record() {
        let spec = AtlasSpec::new(GroupId::Z18, &[1, 0], Limit::Exhaustive).unwrap();
        assert_eq!(spec.count(), 262144);
        let first = spec.chunk(0);
        assert!(first[0].d.is_zero());
        assert_eq!(first[1].coeffs[17], 1);
    }

    #[test]
    fn one_plus_y() {
        let mut c = [0; ORDER];
        c[0] = 1;
        c[1] = 1;
        assert_eq!(AtlasRecord::evaluate(GroupId::Z18, c).d, BigInt::from(4));
    }

    #[test]
    fn fake_record_is_caught() {
        let mut r = AtlasRecord::evaluate(GroupId::Z18, [0; ORDER]);
        r.d = BigInt::from(6);
        r.d1 = BigInt::from(6);
        r.d2 = BigInt::from(1);
        assert!(matches!(audit(&[r]), Err(Error::AuditViolation(_))));
    }

    #[test]
    fn sample_roundtrip() {
        let spec = AtlasSpec::new(GroupId::Z3xZ6, &[-1, 0, 1], Limit::Sample { count: 40000, seed: 7 }).unwrap();
        let mut buf = Vec::new();
        assert_eq!(write_atlas(&spec, &mut buf).unwrap(), 40000);
        let (h, recs) = read_atlas(&buf[..]).unwrap();
        assert_eq!(h.unwrap().seed, Some(7));
        assert_eq!(recs, spec.collect());
        let report = audit(&recs).unwrap();
        assert_eq!(report.records, 40000);
        assert_eq!(merge([recs.clone(), recs.clone()]).len(), merge([recs]).len());
    }

    #[test]
    fn oversized_sample_becomes_exhaustive() {
        let spec = AtlasSpec::new(GroupId::Z18, &[0], Limit::Sample { count: 10, seed: 1 }).unwrap();
        assert_eq!(spec.limit, Limit::Exhaustive);
        assert_eq!(spec.count(), 1);
    }
}
