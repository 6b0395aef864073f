//! Output helpers: exact rationals as "p/q" strings, a generic
//! human-readable renderer for the JSON documents, and decimal expansion
//! for plot CSV.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use quiverstab::linalg::Rational;
use quiverstab::quiver::DimensionVector;
use serde_json::Value;

/// Canonical string form of an exact rational: "n" for integers, "n/d"
/// otherwise, denominator positive.
pub fn rat_str(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_json(r: &Rational) -> Value {
    Value::String(rat_str(r))
}

pub fn dim_json(d: &DimensionVector) -> Value {
    Value::Array(d.0.iter().map(|&x| Value::Number(x.into())).collect())
}

pub fn rats_json(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rat_json).collect())
}

/// Fixed-point decimal expansion of a rational with `digits` fractional
/// digits, computed by integer long division (used only for plot CSV).
pub fn rat_decimal(r: &Rational, digits: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let num = r.numer().abs();
    let den = r.denom().abs();
    let whole = &num / &den;
    let mut rem = &num % &den;
    let mut frac = String::new();
    for _ in 0..digits {
        rem *= BigInt::from(10);
        let digit = &rem / &den;
        frac.push_str(&digit.to_string());
        rem %= &den;
    }
    while frac.ends_with('0') {
        frac.pop();
    }
    if frac.is_empty() {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Plain-text rendering of an output document: sorted keys, one scalar per
/// line, arrays inline when scalar-only.
pub fn render_human(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, None, &mut out);
    out
}

fn is_scalar(v: &Value) -> bool {
    matches!(v, Value::Null | Value::Bool(_) | Value::Number(_) | Value::String(_))
}

fn scalar_str(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => unreachable!(),
    }
}

fn render_into(value: &Value, indent: usize, label: Option<&str>, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        v if is_scalar(v) => {
            match label {
                Some(l) => out.push_str(&format!("{pad}{l}: {}\n", scalar_str(v))),
                None => out.push_str(&format!("{pad}{}\n", scalar_str(v))),
            };
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let joined = items.iter().map(scalar_str).collect::<Vec<_>>().join(", ");
            match label {
                Some(l) => out.push_str(&format!("{pad}{l}: [{joined}]\n")),
                None => out.push_str(&format!("{pad}[{joined}]\n")),
            }
        }
        Value::Array(items) => {
            if let Some(l) = label {
                out.push_str(&format!("{pad}{l}:\n"));
            }
            for (k, item) in items.iter().enumerate() {
                render_into(item, indent + 1, Some(&format!("[{k}]")), out);
            }
        }
        Value::Object(map) => {
            if let Some(l) = label {
                out.push_str(&format!("{pad}{l}:\n"));
            }
            let next = if label.is_some() { indent + 1 } else { indent };
            for (k, v) in map {
                render_into(v, next, Some(k), out);
            }
        }
    }
}
