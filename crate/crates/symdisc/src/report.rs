//! Deterministic report rendering.
//!
//! `serde_json` maps keep their keys sorted, and every float is rounded to 12
//! significant digits before printing, so equal requests give equal bytes.

use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Rounds `x` to 12 significant digits; non-finite values become `null`.
pub fn round12(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    // Avoid printing "-0.0".
    let r = if r == 0.0 { 0.0 } else { r };
    Number::from_f64(r).map_or(Value::Null, Value::Number)
}

/// Rounds every float in a JSON tree; integers are left alone.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => round12(n.as_f64().unwrap()),
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

pub fn render_json(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&normalize(report.clone())).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Fixed-width two-column rendering: one dotted key path per leaf.
pub fn render_text(report: &Value) -> String {
    let mut rows = Vec::new();
    flatten(&normalize(report.clone()), String::new(), &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

fn flatten(v: &Value, prefix: String, rows: &mut Vec<(String, String)>) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                flatten(child, join(k), rows);
            }
        }
        // Rows of numbers stay on one line so matrices read as tables.
        Value::Array(items) if !items.is_empty() && !items.iter().all(is_scalar) => {
            for (i, child) in items.iter().enumerate() {
                flatten(child, join(&i.to_string()), rows);
            }
        }
        Value::Array(items) => rows.push((prefix, items.iter().map(scalar_text).collect::<Vec<_>>().join(" "))),
        leaf => rows.push((prefix, scalar_text(leaf))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `[re, im]` pair.
pub fn complex(z: symdisc_core::Complex64) -> Value {
    Value::Array(vec![round12(z.re), round12(z.im)])
}

/// Builds an object from `(key, value)` pairs.
pub fn object<I, K>(pairs: I) -> Value
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    Value::Object(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect::<Map<_, _>>())
}
