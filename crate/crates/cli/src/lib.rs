//! `groupdet`: every library operation as a subcommand printing JSON.
//!
//! Payloads go to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 1 on a domain error (payload `{"error": name, "message": text}`) and 2 on
//! a usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use groupdet_core::atlas::{audit_report, read_atlas, write_atlas, AtlasSpec, Limit};
use groupdet_core::bigint_serde::from_json_value;
use groupdet_core::groupring::{det_characters, det_matrix_oracle, GroupId, GroupRingElement};
use groupdet_core::membership::decide;
use groupdet_core::primeclass::{
    classify_prime, lemma6_element, represent_lemma6, represent_norm_form, represent_type1, type_list,
    PrimeTag,
};
use groupdet_core::proofcheck::{check, Template, IDENTITIES};
use groupdet_core::witness::{witness_for, DEFAULT_BUDGET};
use groupdet_core::{is_prime, Error};
use num_bigint::BigInt;
use serde_json::{json, Value};

const LONG_VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    "\nimplemented determinant sets:",
    "\n  S(Z3xZ3)  = {3^6 m} ∪ {9m ± 1}",
    "\n  S(Z3xZ6)  complete, 3-adic valuation ≠ 7 and = 7",
    "\n  S(Z18)    complete, 3-adic valuation ≠ 3 and = 3",
);

#[derive(Parser, Debug)]
#[command(name = "groupdet", version, long_version = LONG_VERSION, about = "Integer group determinants for Z18 and Z3xZ6")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Group {
    Z18,
    Z3x6,
}

impl From<Group> for GroupId {
    fn from(g: Group) -> Self {
        match g {
            Group::Z18 => GroupId::Z18,
            Group::Z3x6 => GroupId::Z3xZ6,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determinant of an element, from a file or an inline 18-vector.
    Det {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, conflicts_with = "coeffs")]
        coeffs_file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// Also run the group-matrix determinant and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Membership verdict; with no D, one integer per stdin line.
    Decide {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(allow_negative_numbers = true)]
        d: Option<String>,
        /// Accepted for compatibility; output is always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Verified witness certificate for a member.
    Witness {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(allow_negative_numbers = true)]
        d: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Type 1 / Type 2 class of a prime with its quadratic-form witness.
    ClassifyPrime { p: String },
    /// The first N primes of a class.
    TypeList {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        class: u8,
        n: usize,
    },
    /// Eisenstein representations of a prime p ≡ 1 mod 3.
    NormRep { p: String },
    /// Sweep a coefficient box and write line-delimited JSON.
    Atlas {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Audit an atlas file against the decision procedure.
    Audit {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Re-check the polynomial congruence identities.
    Proofcheck {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(IDENTITIES))]
        identity: Option<String>,
        /// Run the deliberately corrupted templates instead.
        #[arg(long)]
        mutated: bool,
    },
}

/// What a command produced: payload lines for stdout and a success flag.
struct Outcome {
    lines: Vec<Value>,
    ok: bool,
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome { lines: vec![v], ok: true }
    }
}

fn error_payload(e: &Error) -> Value {
    json!({ "error": e.name(), "message": e.to_string() })
}

fn parse_int(s: &str) -> Result<BigInt, Error> {
    s.trim().parse().map_err(|_| Error::PreconditionViolated(format!("not an integer: {s:?}")))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable payload")
}

fn parse_coeff_list(s: &str) -> Result<Vec<BigInt>, Error> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    s.split(',').map(parse_int).collect()
}

/// A JSON element `{"group", "coeffs"}`, a JSON array, or a bare
/// comma-separated list.
fn read_element(group: GroupId, text: &str) -> Result<GroupRingElement, Error> {
    let text = text.trim();
    if let Ok(v) = serde_json::from_str::<Value>(text) {
        if v.is_object() {
            let e: GroupRingElement =
                serde_json::from_value(v).map_err(|e| Error::MalformedExpression(e.to_string()))?;
            if e.group != group {
                return Err(Error::GroupMismatch(group, e.group));
            }
            return Ok(e);
        }
        if let Value::Array(items) = v {
            let coeffs = items.iter().map(from_json_value).collect::<Result<Vec<_>, _>>();
            return GroupRingElement::new(group, coeffs.map_err(Error::MalformedExpression)?);
        }
    }
    GroupRingElement::new(group, parse_coeff_list(text)?)
}

fn bigint_str(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn cmd_det(group: GroupId, file: Option<PathBuf>, coeffs: Option<String>, oracle: bool) -> Result<Outcome, Error> {
    let text = match (file, coeffs) {
        (Some(path), _) => std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        (None, Some(c)) => c,
        (None, None) => return Err(Error::PreconditionViolated("give --coeffs-file or --coeffs".into())),
    };
    let e = read_element(group, &text)?;
    let s = det_characters(&e);
    let mut out = json!({ "d1": bigint_str(&s.d1), "d2": bigint_str(&s.d2), "d": bigint_str(&s.d) });
    if oracle {
        let o = det_matrix_oracle(&e);
        out["oracle"] = bigint_str(&o);
        out["agree"] = Value::Bool(o == s.d);
        if o != s.d {
            return Ok(Outcome { lines: vec![out], ok: false });
        }
    }
    Ok(Outcome::ok(out))
}

fn cmd_decide(group: GroupId, d: Option<String>, input: &mut dyn BufRead) -> Result<Outcome, Error> {
    if let Some(d) = d {
        return Ok(Outcome::ok(to_value(&decide(&parse_int(&d)?, group)?)));
    }
    let mut out = Outcome { lines: Vec::new(), ok: true };
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_int(&line).and_then(|d| decide(&d, group)) {
            Ok(v) => out.lines.push(to_value(&v)),
            Err(e) => {
                out.ok = false;
                out.lines.push(error_payload(&e));
            }
        }
    }
    Ok(out)
}

fn cmd_classify(p: &str) -> Result<Outcome, Error> {
    let c = classify_prime(&parse_int(p)?)?;
    let mut v = json!({ "tag": c.tag.to_string() });
    if let Some((x, y)) = c.evidence {
        v["x"] = bigint_str(&x);
        v["y"] = bigint_str(&y);
    }
    Ok(Outcome::ok(v))
}

fn cmd_norm_rep(p: &str) -> Result<Outcome, Error> {
    let p = parse_int(p)?;
    if !is_prime(&p) {
        return Err(Error::PreconditionViolated(format!("{p} is not prime")));
    }
    let (a, b) = represent_norm_form(&p)?;
    let mut v = json!({ "p": bigint_str(&p), "a": bigint_str(&a), "b": bigint_str(&b) });
    if classify_prime(&p)?.tag == PrimeTag::Type1 {
        let (ta, tb) = represent_type1(&p)?;
        v["type1"] = json!({ "A": bigint_str(&ta), "B": bigint_str(&tb) });
        if let Ok((la, lb)) = represent_lemma6(&p) {
            let r = u64::try_from(&p % 9u32).unwrap_or(0);
            v["lemma6"] = json!({
                "A": bigint_str(&la),
                "B": bigint_str(&lb),
                "element": lemma6_element(r, &la, &lb).to_string(),
            });
        }
    }
    Ok(Outcome::ok(v))
}

fn cmd_atlas(group: GroupId, coeffs: &str, limit: Option<u64>, seed: u64, out: PathBuf, err: &mut dyn Write) -> Result<Outcome, Error> {
    let set: Vec<i64> = coeffs
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::PreconditionViolated(format!("bad coefficient {s:?}"))))
        .collect::<Result<_, _>>()?;
    let limit = match limit {
        Some(count) => Limit::Sample { count, seed },
        None => Limit::Exhaustive,
    };
    let spec = AtlasSpec::new(group, &set, limit)?;
    let _ = writeln!(err, "writing {} records to {}", spec.count(), out.display());
    let file = File::create(&out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let mut w = BufWriter::new(file);
    let n = write_atlas(&spec, &mut w)?;
    w.flush()?;
    Ok(Outcome::ok(json!({ "records": n, "out": out.display().to_string(), "header": to_value(&spec.header()) })))
}

fn cmd_audit(input: PathBuf) -> Result<Outcome, Error> {
    let file = File::open(&input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
    let (_, records) = read_atlas(BufReader::new(file))?;
    let report = audit_report(&records)?;
    if let Some(first) = report.violations.first() {
        return Err(Error::AuditViolation(format!("{} violations; first: {first}", report.violations.len())));
    }
    Ok(Outcome::ok(to_value(&report)))
}

fn cmd_proofcheck(identity: Option<String>, mutated: bool) -> Outcome {
    let template = if mutated { Template::Mutated } else { Template::Faithful };
    let ids: Vec<&str> = match &identity {
        Some(id) => vec![id.as_str()],
        None => IDENTITIES.to_vec(),
    };
    let reports: Vec<_> = ids.iter().filter_map(|id| check(id, template)).collect();
    let ok = reports.iter().all(|r| r.pass);
    Outcome { lines: vec![to_value(&reports)], ok }
}

fn dispatch(cli: Cli, input: &mut dyn BufRead, err: &mut dyn Write) -> Result<Outcome, Error> {
    match cli.command {
        Command::Det { group, coeffs_file, coeffs, oracle } => cmd_det(group.into(), coeffs_file, coeffs, oracle),
        Command::Decide { group, d, json: _ } => cmd_decide(group.into(), d, input),
        Command::Witness { group, d, budget } => {
            Ok(Outcome::ok(to_value(&witness_for(&parse_int(&d)?, group.into(), budget)?)))
        }
        Command::ClassifyPrime { p } => cmd_classify(&p),
        Command::TypeList { class, n } => {
            let tag = if class == 1 { PrimeTag::Type1 } else { PrimeTag::Type2 };
            let primes: Vec<Value> = type_list(tag, n).iter().map(bigint_str).collect();
            Ok(Outcome::ok(json!({ "tag": tag.to_string(), "primes": primes })))
        }
        Command::NormRep { p } => cmd_norm_rep(&p),
        Command::Atlas { group, coeffs, limit, seed, out } => cmd_atlas(group.into(), &coeffs, limit, seed, out, err),
        Command::Audit { input: path } => cmd_audit(path),
        Command::Proofcheck { identity, mutated } => Ok(cmd_proofcheck(identity, mutated)),
    }
}

/// Parses `args`, runs the command and returns the exit status.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(cli, input, err) {
        Ok(o) => {
            for line in &o.lines {
                let _ = writeln!(out, "{line}");
            }
            if o.ok {
                0
            } else {
                let _ = writeln!(err, "command reported a failure");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(out, "{}", error_payload(&e));
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
