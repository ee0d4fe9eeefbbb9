//! Locale-free number formatting shared by the CSV, TSV and JSON writers.

use serde_json::{Number, Value};

use crate::scalar::{to_f64, Real};

/// 17 significant digits in scientific notation, enough to round-trip binary64.
pub fn sci<T: Real>(x: T) -> String {
    format!("{:.16e}", to_f64(x))
}

/// JSON number with 17 significant digits; `null` for NaN and infinities.
pub fn json_num<T: Real>(x: T) -> Value {
    let v = to_f64(x);
    if !v.is_finite() {
        return Value::Null;
    }
    // arbitrary_precision keeps the digits exactly as written
    match serde_json::from_str::<Number>(&sci(v)) {
        Ok(n) => Value::Number(n),
        Err(_) => Value::Null,
    }
}

/// Inverse of [`json_num`]: `null` reads back as NaN.
pub fn json_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Null => Some(f64::NAN),
        Value::Number(n) => n.as_str().parse().ok().or_else(|| n.as_f64()),
        _ => None,
    }
}
