//! Number formatting shared by every CSV and JSON writer.

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 15 significant decimal digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Shortest decimal text of `x` rounded to 15 significant digits.
pub fn fmt_sig(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// Recursively rounds every float in a JSON value to 15 significant digits.
pub fn round_json(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                *n = r;
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_json),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Serializes `value` as pretty JSON with a leading `schema_version` field
/// and every float at 15 significant digits.
pub fn to_json<T: serde::Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    if let serde_json::Value::Object(map) = v {
        let mut out = serde_json::Map::new();
        out.insert("schema_version".into(), SCHEMA_VERSION.into());
        out.extend(map);
        v = serde_json::Value::Object(out);
    }
    serde_json::to_string_pretty(&v)
}
