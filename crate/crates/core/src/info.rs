//! Entropy helpers. All logarithms are base 2.

/// `-p log2 p`, with `0 log 0 = 0`.
#[inline]
pub fn neg_plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Shannon entropy of a probability vector, in bits.
pub fn entropy(p: &[f64]) -> f64 {
    p.iter().map(|&x| neg_plogp(x)).sum()
}

/// Binary entropy `h_b(s)`.
pub fn binary_entropy(s: f64) -> f64 {
    neg_plogp(s) + neg_plogp(1.0 - s)
}

/// Rounds to nine significant digits; used for every number written to reports.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let formatted = format!("{:.8e}", x);
    formatted.parse().unwrap_or(x)
}

/// Rounds every float in a JSON tree to nine significant digits.
pub fn round_json(v: &mut serde_json::Value) {
    use serde_json::Value;
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = sig9(num.as_f64().unwrap_or(0.0));
            if let Some(r) = serde_json::Number::from_f64(x) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Pretty JSON with every float rounded by [`round_json`]; the format of all reports.
pub fn report_json<T: serde::Serialize>(value: &T) -> crate::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    Ok(serde_json::to_string_pretty(&v)?)
}
