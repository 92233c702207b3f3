//! JSON encodings of fields, elements, polynomials, points, maps, bundles
//! and covers.
//!
//! Elements of a prime field are integers; elements of an extension are
//! little-endian coefficient lists. Polynomials are little-endian lists of
//! elements and closed points are `"inf"` or the coefficient list of their
//! monic polynomial.

use serde_json::{json, Value};
use thiserror::Error;

use crate::conicbundle::ConicBundle;
use crate::coversynth::{Cover, Step, StepKind};
use crate::gf::{Fe, Field, FieldDesc, FiniteField};
use crate::p1curve::{ClosedPoint, RatPoint, RationalMap};
use crate::poly::Poly;

/// A rejected input, with the JSON path where it was found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct InputError {
    pub path: String,
    pub message: String,
}

fn err(path: &str, message: impl Into<String>) -> InputError {
    InputError {
        path: path.to_string(),
        message: message.into(),
    }
}

fn get<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, InputError> {
    v.get(key).ok_or_else(|| err(path, format!("missing key \"{key}\"")))
}

pub fn elem(k: &Field, a: Fe) -> Value {
    let c = k.coefficients(a);
    if k.degree() == 1 {
        json!(c[0])
    } else {
        json!(c)
    }
}

/// Coefficients are integers in [0, p), or in (−p, 0) standing for their
/// residue mod p.
pub fn parse_elem(k: &Field, v: &Value, path: &str) -> Result<Fe, InputError> {
    let p = k.p() as i64;
    let as_u64 = |x: &Value| match x.as_i64() {
        Some(c) if c < 0 && c > -p => Ok((c + p) as u64),
        Some(c) if c >= 0 => Ok(c as u64),
        _ => Err(err(
            path,
            format!("expected an integer coefficient in (−p, p), got {x}"),
        )),
    };
    let coeffs = match v {
        Value::Array(xs) => xs.iter().map(as_u64).collect::<Result<Vec<_>, _>>()?,
        x => vec![as_u64(x)?],
    };
    k.from_coeffs(&coeffs).map_err(|e| err(path, e.to_string()))
}

pub fn poly(k: &Field, p: &Poly<Fe>) -> Value {
    Value::Array(p.coeffs().iter().map(|&a| elem(k, a)).collect())
}

pub fn parse_poly(k: &Field, v: &Value, path: &str) -> Result<Poly<Fe>, InputError> {
    let xs = v.as_array().ok_or_else(|| err(path, "expected a coefficient list"))?;
    let c = xs
        .iter()
        .enumerate()
        .map(|(i, x)| parse_elem(k, x, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(c, k))
}

pub fn point(k: &Field, p: &ClosedPoint) -> Value {
    match p {
        ClosedPoint::Infinity => json!("inf"),
        ClosedPoint::Finite(f) => poly(k, f),
    }
}

pub fn parse_point(k: &Field, v: &Value, path: &str) -> Result<ClosedPoint, InputError> {
    if v.as_str() == Some("inf") {
        return Ok(ClosedPoint::Infinity);
    }
    let f = parse_poly(k, v, path)?;
    ClosedPoint::finite(f, k).map_err(|e| err(path, e.to_string()))
}

/// A rational point given as `"inf"`, an element, or a degree-1 point.
pub fn parse_rational_point(k: &Field, v: &Value, path: &str) -> Result<RatPoint, InputError> {
    if v.as_str() == Some("inf") {
        return Ok(RatPoint::Infinity);
    }
    if let Ok(a) = parse_elem(k, v, path) {
        return Ok(RatPoint::Finite(a));
    }
    parse_point(k, v, path)?
        .as_rational(k)
        .ok_or_else(|| err(path, "point is not rational"))
}

pub fn rational_point(k: &Field, p: RatPoint) -> Value {
    match p {
        RatPoint::Infinity => json!("inf"),
        RatPoint::Finite(a) => elem(k, a),
    }
}

pub fn field(k: &Field) -> Value {
    serde_json::to_value(k.desc()).expect("field descriptions serialize")
}

pub fn parse_field(v: &Value, path: &str) -> Result<Field, InputError> {
    let desc: FieldDesc = serde_json::from_value(v.clone()).map_err(|e| err(path, e.to_string()))?;
    Field::from_desc(&desc).map_err(|e| err(path, e.to_string()))
}

pub fn map(m: &RationalMap) -> Value {
    let k = m.field();
    json!({ "num": poly(k, m.num()), "den": poly(k, m.den()) })
}

pub fn parse_map(k: &Field, v: &Value, path: &str) -> Result<RationalMap, InputError> {
    let num = parse_poly(k, get(v, "num", path)?, &format!("{path}.num"))?;
    let den = parse_poly(k, get(v, "den", path)?, &format!("{path}.den"))?;
    RationalMap::new(num, den, k).map_err(|e| err(path, e.to_string()))
}

pub fn bundle(b: &ConicBundle) -> Value {
    let k = b.field();
    json!({
        "field": field(k),
        "a": poly(k, b.a()),
        "b": poly(k, b.b()),
        "c": poly(k, b.c()),
    })
}

pub fn parse_bundle(v: &Value) -> Result<ConicBundle, InputError> {
    let k = parse_field(get(v, "field", "$")?, "$.field")?;
    let [a, b, c] = ["a", "b", "c"].map(|key| parse_poly(&k, get(v, key, "$")?, &format!("$.{key}")));
    ConicBundle::new(a?, b?, c?, &k).map_err(|e| err("$", e.to_string()))
}

pub fn cover(c: &Cover) -> Value {
    let k = c.map().field();
    let chain: Vec<Value> = c
        .chain()
        .iter()
        .map(|s| {
            json!({
                "kind": s.kind,
                "params": s.params,
                "num": poly(k, s.map.num()),
                "den": poly(k, s.map.den()),
            })
        })
        .collect();
    json!({
        "num": poly(k, c.map().num()),
        "den": poly(k, c.map().den()),
        "chain": chain,
    })
}

/// Parses a cover without checking that its chain recomposes to its map;
/// that is a verification step, not a parse error.
pub fn parse_cover(k: &Field, v: &Value, path: &str) -> Result<Cover, InputError> {
    let map = parse_map(k, v, path)?;
    let chain = match v.get("chain") {
        None => Vec::new(),
        Some(c) => c
            .as_array()
            .ok_or_else(|| err(path, "chain must be a list"))?
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let p = format!("{path}.chain[{i}]");
                let kind: StepKind =
                    serde_json::from_value(get(s, "kind", &p)?.clone()).map_err(|e| err(&p, e.to_string()))?;
                Ok(Step {
                    kind,
                    params: s.get("params").cloned().unwrap_or(Value::Null),
                    map: parse_map(k, s, &p)?,
                })
            })
            .collect::<Result<Vec<_>, InputError>>()?,
    };
    Ok(Cover::from_parts(map, chain))
}
