//! Certificate files.
//!
//! ```json
//! {"name": "C4", "theta": "pi/4", "mode": "exact",
//!  "basis": ["-sqrt2*A0 + B0 + B1", ...],
//!  "gram": [["1/4*sqrt2", "0", ...], ...]}
//! ```
//!
//! `theta` is `"symbolic"`, `"pi/4"`, `"pi/8"` or a number. Exact mode needs
//! one of the first three; numeric mode needs a concrete angle. Scalars are
//! numbers or expression strings. The optional `target` defaults to the shifted
//! operator at that angle.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use serde_json::{json, Value};

use super::{AnyCertificate, Certificate};
use crate::algebra::{parse_poly, parse_scalar, shifted_operator, NcPoly};
use crate::angle::Tilt;
use crate::error::{Error, Result};
use crate::field::{parse_decimal, Evaluate, Field, Scalar, Surd};

fn bad(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

enum Angle {
    Symbolic,
    Pi4,
    Pi8,
    Value(f64),
}

impl Angle {
    fn value(&self) -> Option<f64> {
        match self {
            Angle::Symbolic => None,
            Angle::Pi4 => Some(FRAC_PI_4),
            Angle::Pi8 => Some(FRAC_PI_8),
            Angle::Value(v) => Some(*v),
        }
    }
}

fn parse_angle(v: &Value) -> Result<Angle> {
    match v {
        Value::String(s) => match s.trim() {
            "symbolic" => Ok(Angle::Symbolic),
            "pi/4" => Ok(Angle::Pi4),
            "pi/8" => Ok(Angle::Pi8),
            other => other
                .parse::<f64>()
                .map(Angle::Value)
                .map_err(|_| bad(format!("unrecognized theta {other:?}"))),
        },
        Value::Number(n) => Ok(Angle::Value(n.as_f64().unwrap_or(f64::NAN))),
        _ => Err(bad("theta must be a string or number")),
    }
}

fn exact_scalar<F: Field>(v: &Value) -> Result<F> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) => parse_decimal(&n.to_string())
            .map(|r| F::from_rational(&r))
            .ok_or_else(|| bad(format!("bad number {n}"))),
        _ => Err(bad(format!("unexpected scalar {v}"))),
    }
}

fn numeric_scalar(v: &Value, theta: f64) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| bad(format!("bad number {n}"))),
        Value::String(s) => match parse_scalar::<Scalar>(s) {
            Ok(x) => x.eval_at(theta),
            Err(_) => Ok(parse_scalar::<Surd>(s)?.to_f64()),
        },
        _ => Err(bad(format!("unexpected scalar {v}"))),
    }
}

fn numeric_poly(src: &str, theta: f64) -> Result<NcPoly<f64>> {
    match parse_poly::<Scalar>(src) {
        Ok(p) => p.eval_at(theta),
        Err(_) => Ok(parse_poly::<Surd>(src)?.map_coeffs(Surd::to_f64)),
    }
}

fn string_list(v: &Value, key: &str) -> Result<Vec<String>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("missing array {key:?}")))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(String::from)
                .ok_or_else(|| bad(format!("{key}: expected strings")))
        })
        .collect()
}

fn gram_rows(v: &Value, n: usize) -> Result<Vec<Vec<Value>>> {
    let rows = v
        .get("gram")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array \"gram\""))?;
    if rows.len() != n {
        return Err(bad(format!(
            "gram has {} rows, basis has {n} elements",
            rows.len()
        )));
    }
    rows.iter()
        .map(|r| match r.as_array() {
            Some(r) if r.len() == n => Ok(r.clone()),
            _ => Err(bad(format!("every gram row must have {n} entries"))),
        })
        .collect()
}

fn build_exact<F: Field + Evaluate>(
    name: &str,
    theta: Option<f64>,
    basis: &[String],
    rows: &[Vec<Value>],
    target: Option<&str>,
    default_target: NcPoly<F>,
) -> Result<Certificate<F>> {
    let basis = basis
        .iter()
        .map(|s| parse_poly(s))
        .collect::<Result<Vec<_>>>()?;
    let gram = rows
        .iter()
        .map(|r| r.iter().map(exact_scalar).collect::<Result<Vec<F>>>())
        .collect::<Result<_>>()?;
    let target = match target {
        Some(s) => parse_poly(s)?,
        None => default_target,
    };
    Ok(Certificate::gram(name, theta, basis, gram, target))
}

pub fn certificate_from_json(text: &str) -> Result<AnyCertificate> {
    let v: Value = serde_json::from_str(text)?;
    let name = v
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("unnamed")
        .to_string();
    let angle = parse_angle(v.get("theta").ok_or_else(|| bad("missing theta"))?)?;
    let mode = v.get("mode").and_then(Value::as_str).unwrap_or("exact");
    let basis = string_list(&v, "basis")?;
    let rows = gram_rows(&v, basis.len())?;
    let target = v.get("target").and_then(Value::as_str);

    match (mode, &angle) {
        ("exact", Angle::Symbolic) => {
            let t = Tilt::<Scalar>::symbolic();
            build_exact(&name, None, &basis, &rows, target, shifted_operator(&t))
                .map(AnyCertificate::Symbolic)
        }
        ("exact", Angle::Pi4 | Angle::Pi8) => {
            let t = if matches!(angle, Angle::Pi4) {
                Tilt::pi4()
            } else {
                Tilt::pi8()
            };
            build_exact(&name, t.theta, &basis, &rows, target, shifted_operator(&t))
                .map(AnyCertificate::Exact)
        }
        ("exact", Angle::Value(_)) => Err(bad(
            "exact mode needs theta \"symbolic\", \"pi/4\" or \"pi/8\"",
        )),
        ("numeric", Angle::Symbolic) => Err(bad("numeric mode needs a concrete theta")),
        ("numeric", _) => {
            let theta = angle.value().expect("concrete angle");
            let t = Tilt::numeric(theta)?;
            let basis = basis
                .iter()
                .map(|s| numeric_poly(s, theta))
                .collect::<Result<Vec<_>>>()?;
            let gram = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| numeric_scalar(x, theta))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let target = match target {
                Some(s) => numeric_poly(s, theta)?,
                None => shifted_operator(&t),
            };
            Ok(AnyCertificate::Numeric(Certificate::gram(
                &name,
                Some(theta),
                basis,
                gram,
                target,
            )))
        }
        (other, _) => Err(bad(format!("unknown mode {other:?}"))),
    }
}

fn theta_json(theta: Option<f64>, exact: bool) -> Value {
    match theta {
        None => json!("symbolic"),
        Some(t) if exact && t == FRAC_PI_4 => json!("pi/4"),
        Some(t) if exact && t == FRAC_PI_8 => json!("pi/8"),
        Some(t) => json!(t),
    }
}

fn to_json<F: Field + Evaluate>(
    c: &Certificate<F>,
    scalar: impl Fn(&F) -> Value,
    default_target: Option<NcPoly<F>>,
) -> Value {
    let (basis, gram) = c.to_gram();
    let mut out = json!({
        "name": c.name,
        "theta": theta_json(c.theta, F::EXACT),
        "mode": if F::EXACT { "exact" } else { "numeric" },
        "basis": basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "gram": gram.iter().map(|r| r.iter().map(&scalar).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    if default_target.as_ref() != Some(&c.target) {
        out["target"] = json!(c.target.to_string());
    }
    out
}

/// Inverse of [`certificate_from_json`]. Sums of squares are written as
/// diagonal Gram matrices.
pub fn certificate_to_json(c: &AnyCertificate) -> Value {
    match c {
        AnyCertificate::Symbolic(c) => to_json(
            c,
            |x| json!(x.to_expr()),
            Some(shifted_operator(&Tilt::symbolic())),
        ),
        AnyCertificate::Exact(c) => {
            let default = match c.theta {
                Some(t) if t == FRAC_PI_4 => Some(shifted_operator(&Tilt::pi4())),
                Some(t) if t == FRAC_PI_8 => Some(shifted_operator(&Tilt::pi8())),
                _ => None,
            };
            to_json(c, |x| json!(x.to_expr()), default)
        }
        AnyCertificate::Numeric(c) => {
            let default = c
                .theta
                .and_then(|t| Tilt::numeric(t).ok())
                .map(|t| shifted_operator(&t));
            to_json(c, |x| json!(x), default)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::library;

    #[test]
    fn library_round_trips() {
        for c in library() {
            let text = certificate_to_json(&c).to_string();
            let back = certificate_from_json(&text).unwrap();
            assert!(back.verify().passed, "{}", c.name());
        }
    }

    #[test]
    fn corrupted_file_fails_and_bad_modes_are_rejected() {
        let c = crate::certificates::library_entry("C4").unwrap();
        let mut v = certificate_to_json(&c);
        v["gram"][0][0] = json!("1");
        let rep = certificate_from_json(&v.to_string()).unwrap().verify();
        assert!(!rep.passed);
        assert_ne!(rep.residual, "0");
        v["theta"] = json!(0.3);
        assert!(certificate_from_json(&v.to_string()).is_err());
    }

    #[test]
    fn numeric_mode_accepts_symbols() {
        let c = crate::certificates::library_entry("C4").unwrap();
        let mut v = certificate_to_json(&c);
        v["mode"] = json!("numeric");
        let back = certificate_from_json(&v.to_string()).unwrap();
        assert!(matches!(back, AnyCertificate::Numeric(_)));
        assert!(back.verify().passed);
    }
}
