use qbf_core::real::{self, Real};
use qbf_core::{Rational, Weight};
use serde_json::{json, Value};

pub fn weight(w: &Weight) -> Value {
    json!(w.coords())
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_f64(r: &Rational) -> Value {
    float(r.to_f64().value())
}

pub fn real(x: &Real, digits: u32) -> Value {
    Value::String(real::render(x, digits))
}

pub fn real_f64(x: &Real) -> Value {
    float(real::to_f64(x))
}

/// Non-finite floats become `null`.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}
