//! Output formatting: 12 significant digits everywhere, stable ordering.

use std::io::Write;
use std::path::Path;

use anyhow::Result;
use serde_json::{Number, Value};

pub const SIGNIFICANT: usize = 12;

/// C-style `%.12g`.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    fmt_g(x).parse().unwrap_or(x)
}

/// Round every float in a JSON tree.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            Number::from_f64(round_sig(x)).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

pub fn json_text(v: impl serde::Serialize) -> Result<String> {
    let v = round_json(serde_json::to_value(v)?);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Write to `out` when given, else to standard output.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        for (x, s) in [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (std::f64::consts::PI, "3.14159265359"),
            (1e-5, "1e-05"),
            (1.234e-4, "0.0001234"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.1 + 0.2, "0.3"),
            (2.0f64.sqrt() * 1e20, "1.41421356237e+20"),
        ] {
            assert_eq!(fmt_g(x), s);
        }
    }

    #[test]
    fn rounds_nested_json() {
        let v = serde_json::json!({"a": [0.1 + 0.2, 1], "b": {"c": std::f64::consts::E}});
        let r = round_json(v);
        assert_eq!(r["a"][0].as_f64(), Some(0.3));
        assert_eq!(r["a"][1].as_i64(), Some(1));
        assert_eq!(r["b"]["c"].as_f64(), Some(2.71828182846));
    }
}
