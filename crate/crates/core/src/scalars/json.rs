//! JSON forms of scalars: {"order", "num", "den"} coefficient vectors.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::field::{CycScalar, CycloField};
use crate::error::{Error, Result};

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer coefficient {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer '{s}'"))),
        _ => Err(Error::Parse("coefficient must be an integer".into())),
    }
}

pub fn scalar_to_json(x: &CycScalar) -> Value {
    let coeffs = x.coeffs();
    let num: Vec<Value> = coeffs.iter().map(|c| int_json(c.numer())).collect();
    let den: Vec<Value> = coeffs.iter().map(|c| int_json(c.denom())).collect();
    json!({"order": x.order(), "num": num, "den": den})
}

pub fn scalar_from_json(v: &Value) -> Result<CycScalar> {
    let order = v
        .get("order")
        .and_then(Value::as_u64)
        .filter(|&m| m > 0 && m <= u32::MAX as u64)
        .ok_or_else(|| Error::Parse("missing or invalid 'order'".into()))?;
    let field: Arc<CycloField> = CycloField::new(order as u32);
    let arr = |key: &str| -> Result<Vec<BigInt>> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("missing '{key}'")))?
            .iter()
            .map(int_from_json)
            .collect()
    };
    let num = arr("num")?;
    let den = arr("den")?;
    if num.len() != den.len() {
        return Err(Error::Parse("'num' and 'den' differ in length".into()));
    }
    let mut coeffs = Vec::with_capacity(num.len());
    for (n, d) in num.into_iter().zip(den) {
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        coeffs.push(BigRational::new(n, d));
    }
    CycScalar::from_coeffs(&field, &coeffs)
}

/// Rounds to `sig` significant decimal digits.
pub fn round_sig(x: f64, sig: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return 0.0;
    }
    let r: f64 = format!("{:.*e}", sig - 1, x).parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn complex_json(z: Complex64) -> Value {
    let clean = |x: f64| if x.abs() < 1e-18 { 0.0 } else { round_sig(x, 15) };
    json!({"re": clean(z.re), "im": clean(z.im)})
}
