//! JSON forms carrying both the exact value and a decimal approximation.

use hecke_tqft::moddata::Check;
use hecke_tqft::scalars::{embed, scalar_to_json, CycScalar, ExtScalar};
use hecke_tqft::Result;
use serde_json::{json, Value};

pub fn scalar(x: &CycScalar, digits: u32) -> Value {
    let (re, im) = embed(x, digits).to_decimal(digits);
    json!({"exact": scalar_to_json(x), "approx": {"re": re, "im": im}})
}

pub fn ext(x: &ExtScalar, digits: u32) -> Result<Value> {
    let (re, im) = x.embed_complex(digits)?.to_decimal(digits);
    Ok(json!({
        "exact": {
            "base": scalar_to_json(&x.base),
            "eta_power": x.eta_pow,
            "omega": scalar_to_json(x.omega()),
        },
        "approx": {"re": re, "im": im},
    }))
}

pub fn checks(list: &[Check]) -> Value {
    json!(list)
}

/// Pretty JSON with a trailing newline; keys are sorted by serde_json's map.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
