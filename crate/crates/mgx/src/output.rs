//! JSON rendering: rationals as `{num, den}` in lowest terms, floats rounded
//! to 15 significant digits, non-finite floats as strings.

use mgx_core::{MultiplicityProfile, Value};
use num_rational::BigRational;
use serde_json::{json, Value as Json};

pub fn float(x: f64) -> Json {
    if !x.is_finite() {
        return Json::String(if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() });
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    json!(rounded)
}

/// Numerator and denominator as JSON numbers when they fit in 64 bits,
/// otherwise as decimal strings.
pub fn rational(r: &BigRational) -> Json {
    let part = |v: &num_bigint::BigInt| -> Json {
        i64::try_from(v.clone()).map(Json::from).unwrap_or_else(|_| Json::String(v.to_string()))
    };
    json!({ "num": part(r.numer()), "den": part(r.denom()) })
}

pub fn profile(p: &MultiplicityProfile) -> Json {
    let counts: serde_json::Map<String, Json> = p.counts().iter().map(|(m, c)| (m.to_string(), json!(c))).collect();
    json!({ "log": float(p.log_value()), "exact": p.to_biguint().to_string(), "profile": counts })
}

pub fn value(v: &Value) -> Json {
    match v {
        Value::Sum(s) => json!(s),
        Value::Product(p) => profile(p),
    }
}

/// Plain-text rendering of a value.
pub fn value_text(v: &Value) -> String {
    match v {
        Value::Sum(s) => s.to_string(),
        Value::Product(p) => format!("{} (ln = {})", p.to_biguint(), fmt_float(p.log_value())),
    }
}

pub fn fmt_float(x: f64) -> String {
    match float(x) {
        Json::String(s) => s,
        j => j.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rationals_reduced() {
        let r = BigRational::new(BigInt::from(12), BigInt::from(10));
        assert_eq!(rational(&r), json!({"num": 6, "den": 5}));
    }

    #[test]
    fn floats() {
        assert_eq!(float(0.1 + 0.2), json!(0.3));
        assert_eq!(float(f64::NEG_INFINITY), json!("-inf"));
    }
}
