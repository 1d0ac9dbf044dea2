//! JSON matrix literals: `{"ring": "...", "rows": [[entry, ...], ...], "den": n}`.
//! An entry is an integer, a coordinate array over the integral basis, a
//! string "a" or "a/b" (rational), or `{"num": entry, "den": n}`.
//! A generator file is `{"ring", "scheme", "provenance", "form"?, "generators": {name: matrix}}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::matrix::{FMat, Mat};
use crate::arith::ring::{FieldElement, RingElement, RingKind};
use crate::error::{Error, Result};

fn int_of(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Input(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| Error::Input(format!("not an integer: {s:?}"))),
        _ => Err(Error::Input(format!("not an integer: {v}"))),
    }
}

fn parse_entry(kind: RingKind, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Number(_) => Ok(FieldElement::from_int(kind, int_of(v)?)),
        Value::String(s) => {
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (n, d),
                None => (s.as_str(), "1"),
            };
            let n: BigInt = n.trim().parse().map_err(|_| Error::Input(format!("bad rational {s:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Input(format!("bad rational {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            Ok(FieldElement::new(RingElement::from_int(kind, n), d))
        }
        Value::Array(a) => {
            if a.len() != kind.degree() {
                return Err(Error::Input(format!("expected {} coordinates, got {}", kind.degree(), a.len())));
            }
            let coords = a.iter().map(int_of).collect::<Result<Vec<_>>>()?;
            Ok(RingElement::new(kind, coords).into())
        }
        Value::Object(o) => {
            let num = o.get("num").ok_or_else(|| Error::Input("entry object without num".into()))?;
            let den = o.get("den").map(int_of).transpose()?.unwrap_or_else(BigInt::one);
            if den.is_zero() {
                return Err(Error::Input("zero denominator".into()));
            }
            let n = parse_entry(kind, num)?;
            Ok(FieldElement::new(n.num, n.den * den))
        }
        _ => Err(Error::Input(format!("bad matrix entry {v}"))),
    }
}

/// Parse the rows (and optional common denominator) of a matrix object over `kind`.
pub fn matrix_from_value(kind: RingKind, v: &Value) -> Result<FMat> {
    let (rows_v, den) = match v {
        Value::Array(_) => (v, BigInt::one()),
        Value::Object(o) => {
            let rows = o.get("rows").ok_or_else(|| Error::Input("matrix without rows".into()))?;
            let den = o.get("den").map(int_of).transpose()?.unwrap_or_else(BigInt::one);
            (rows, den)
        }
        _ => return Err(Error::Input("matrix must be an object or array".into())),
    };
    if den.is_zero() {
        return Err(Error::Input("zero denominator".into()));
    }
    let rows = rows_v.as_array().ok_or_else(|| Error::Input("rows must be an array".into()))?;
    let mut out = Vec::new();
    for r in rows {
        let r = r.as_array().ok_or_else(|| Error::Input("row must be an array".into()))?;
        let row = r
            .iter()
            .map(|e| parse_entry(kind, e).map(|x| FieldElement::new(x.num, x.den * &den)))
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    if out.is_empty() || out.iter().any(|r| r.len() != out[0].len()) {
        return Err(Error::Input("ragged or empty matrix".into()));
    }
    Ok(Mat::from_rows(out))
}

pub fn parse_matrix(text: &str) -> Result<FMat> {
    let v: Value = serde_json::from_str(text)?;
    let ring = v.get("ring").and_then(|r| r.as_str()).ok_or_else(|| Error::Input("missing ring".into()))?;
    let kind = RingKind::parse(ring)?;
    matrix_from_value(kind, &v)
}

fn entry_to_value(x: &FieldElement) -> Value {
    let num: Value = if x.kind().degree() == 1 {
        json!(x.num.coords[0].to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(x.num.coords[0].to_string())))
    } else {
        Value::Array(
            x.num
                .coords
                .iter()
                .map(|c| c.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(c.to_string())))
                .collect(),
        )
    };
    if x.den.is_one() {
        num
    } else {
        json!({"num": num, "den": x.den.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(x.den.to_string()))})
    }
}

pub fn matrix_to_value(m: &FMat) -> Value {
    let rows: Vec<Value> = (0..m.rows).map(|r| Value::Array(m.row(r).iter().map(entry_to_value).collect())).collect();
    json!({"ring": m.kind().name(), "rows": rows})
}

#[derive(Clone, Debug)]
pub struct GeneratorFile {
    pub kind: RingKind,
    pub scheme: String,
    pub provenance: String,
    pub form: Option<FMat>,
    pub generators: BTreeMap<String, FMat>,
    /// Extra top-level fields, kept for consumers such as Coxeter data.
    pub extra: serde_json::Map<String, Value>,
}

pub fn parse_generator_file(text: &str) -> Result<GeneratorFile> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v.as_object().ok_or_else(|| Error::Input("generator file must be an object".into()))?;
    let ring = obj.get("ring").and_then(|r| r.as_str()).ok_or_else(|| Error::Input("missing ring".into()))?;
    let kind = RingKind::parse(ring)?;
    let provenance = obj
        .get("provenance")
        .and_then(|p| p.as_str())
        .ok_or_else(|| Error::Input("missing provenance".into()))?
        .to_string();
    let scheme = obj.get("scheme").and_then(|s| s.as_str()).unwrap_or("GL").to_string();
    let form = obj.get("form").map(|f| matrix_from_value(kind, f)).transpose()?;
    let gens = obj
        .get("generators")
        .and_then(|g| g.as_object())
        .ok_or_else(|| Error::Input("missing generators".into()))?;
    let mut generators = BTreeMap::new();
    for (name, m) in gens {
        generators.insert(name.clone(), matrix_from_value(kind, m)?);
    }
    let mut extra = obj.clone();
    for k in ["ring", "provenance", "scheme", "form", "generators"] {
        extra.remove(k);
    }
    Ok(GeneratorFile { kind, scheme, provenance, form, generators, extra })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"ring": "d=1", "rows": [[1, [0, 1]], [{"num": [1, 1], "den": 2}, "3/4"]]}"#;
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.kind(), RingKind::ImagQuadratic(1));
        assert_eq!(m.get(1, 1), &FieldElement::new(RingElement::from_int(RingKind::ImagQuadratic(1), 3), 4.into()));
        let back = parse_matrix(&matrix_to_value(&m).to_string()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn common_denominator() {
        let m = parse_matrix(r#"{"ring": "rational", "rows": [[1, 0], [0, 1]], "den": 2}"#).unwrap();
        assert_eq!(m.get(0, 0), &FieldElement::from_ratio(RingKind::Rational, 1, 2));
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_matrix(r#"{"ring": "d=5", "rows": [[1]]}"#).is_err());
        assert!(parse_matrix(r#"{"ring": "d=1", "rows": [[1, 2], [3]]}"#).is_err());
        assert!(parse_matrix(r#"{"ring": "d=1", "rows": [[[1, 2, 3]]]}"#).is_err());
    }
}
