//! Big integers travel through JSON as decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let v = serde_json::Value::deserialize(d)?;
    from_json_value(&v).map_err(serde::de::Error::custom)
}

/// Accepts a JSON number or a decimal string.
pub fn from_json_value(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::String(s) => s.trim().parse().map_err(|_| format!("bad integer {s:?}")),
        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
            n.to_string().parse().map_err(|_| format!("bad integer {n}"))
        }
        other => Err(format!("expected an integer, got {other}")),
    }
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter().map(from_json_value).collect::<Result<_, _>>().map_err(serde::de::Error::custom)
    }
}
