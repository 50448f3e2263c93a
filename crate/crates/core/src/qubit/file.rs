//! JSON form of a [`QubitSystem`].
//!
//! ```json
//! {"theta": 0.39269908169872414, "d_a": 2, "d_b": 2,
//!  "state": [[0.92, 0.0], [0.0, 0.0], [0.0, 0.0], [0.38, 0.0]],
//!  "a0": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]], "a1": ..., "b0": ..., "b1": ...}
//! ```
//!
//! Any vector or matrix may instead be a base64 string of little-endian f64
//! `(re, im)` pairs in row-major order.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use serde_json::{json, Value};

use super::QubitSystem;
use crate::error::{Error, Result};
use crate::linalg::{complex, CMat, CVec};
use num_complex::Complex64;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidSystem(msg.into())
}

fn decode_entries(v: &Value, expected: usize, what: &str) -> Result<Vec<Complex64>> {
    let out = match v {
        Value::String(s) => {
            let bytes = STANDARD
                .decode(s.trim())
                .map_err(|e| bad(format!("{what}: invalid base64: {e}")))?;
            if bytes.len() % 16 != 0 {
                return Err(bad(format!(
                    "{what}: base64 payload is not a list of f64 pairs"
                )));
            }
            bytes
                .chunks_exact(16)
                .map(|c| {
                    let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
                    let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
                    complex(re, im)
                })
                .collect()
        }
        Value::Array(items) => {
            let mut out = Vec::new();
            flatten(items, &mut out, what)?;
            out
        }
        _ => return Err(bad(format!("{what}: expected an array or base64 string"))),
    };
    if out.len() != expected {
        return Err(bad(format!(
            "{what}: expected {expected} entries, found {}",
            out.len()
        )));
    }
    Ok(out)
}

/// Accepts nested rows of `[re, im]` pairs or plain real numbers.
fn flatten(items: &[Value], out: &mut Vec<Complex64>, what: &str) -> Result<()> {
    for it in items {
        match it {
            Value::Number(n) => out.push(complex(n.as_f64().unwrap_or(f64::NAN), 0.0)),
            Value::Array(pair) if pair.len() == 2 && pair.iter().all(Value::is_number) => {
                out.push(complex(
                    pair[0].as_f64().unwrap_or(f64::NAN),
                    pair[1].as_f64().unwrap_or(f64::NAN),
                ))
            }
            Value::Array(row) => flatten(row, out, what)?,
            _ => return Err(bad(format!("{what}: unexpected entry {it}"))),
        }
    }
    Ok(())
}

fn get<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn get_dim(obj: &Value, key: &str) -> Result<usize> {
    get(obj, key)?
        .as_u64()
        .map(|d| d as usize)
        .ok_or_else(|| bad(format!("{key} must be a positive integer")))
}

pub fn system_from_json(text: &str) -> Result<QubitSystem> {
    let v: Value = serde_json::from_str(text)?;
    let theta = get(&v, "theta")?
        .as_f64()
        .ok_or_else(|| bad("theta must be a number"))?;
    crate::error::check_theta(theta)?;
    let d_a = get_dim(&v, "d_a")?;
    let d_b = get_dim(&v, "d_b")?;
    if d_a == 0 || d_b == 0 || d_a > super::MAX_LOCAL_DIM || d_b > super::MAX_LOCAL_DIM {
        return Err(bad(format!("local dimensions ({d_a}, {d_b}) out of range")));
    }
    let state = CVec::from_vec(decode_entries(get(&v, "state")?, d_a * d_b, "state")?);
    let mat = |key: &str, d: usize| -> Result<CMat> {
        Ok(CMat::from_row_slice(
            d,
            d,
            &decode_entries(get(&v, key)?, d * d, key)?,
        ))
    };
    QubitSystem::new(
        theta,
        state,
        [mat("a0", d_a)?, mat("a1", d_a)?],
        [mat("b0", d_b)?, mat("b1", d_b)?],
    )
}

fn encode_base64(entries: impl Iterator<Item = Complex64>) -> Value {
    let mut bytes = Vec::new();
    for z in entries {
        bytes.extend_from_slice(&z.re.to_le_bytes());
        bytes.extend_from_slice(&z.im.to_le_bytes());
    }
    Value::String(STANDARD.encode(bytes))
}

fn rows(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn row_major(m: &CMat) -> impl Iterator<Item = Complex64> + '_ {
    (0..m.nrows()).flat_map(move |i| (0..m.ncols()).map(move |j| m[(i, j)]))
}

/// Serialize, with decimal arrays or base64 payloads.
pub fn system_to_json(sys: &QubitSystem, base64: bool) -> Value {
    let vec = |v: &CVec| -> Value {
        if base64 {
            encode_base64(v.iter().copied())
        } else {
            Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
        }
    };
    let mat = |m: &CMat| -> Value {
        if base64 {
            encode_base64(row_major(m))
        } else {
            rows(m)
        }
    };
    json!({
        "theta": sys.theta,
        "d_a": sys.d_a,
        "d_b": sys.d_b,
        "state": vec(&sys.state),
        "a0": mat(&sys.alice[0]),
        "a1": mat(&sys.alice[1]),
        "b0": mat(&sys.bob[0]),
        "b1": mat(&sys.bob[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_both_encodings() {
        let sys = QubitSystem::reference(0.5).unwrap();
        for b64 in [false, true] {
            let text = system_to_json(&sys, b64).to_string();
            let back = system_from_json(&text).unwrap();
            assert!((&back.state - &sys.state).norm() < 1e-15);
            assert!((&back.bob[1] - &sys.bob[1]).norm() < 1e-15);
            assert_eq!(back.theta, sys.theta);
        }
    }

    #[test]
    fn rejects_wrong_sizes() {
        let sys = QubitSystem::reference(0.5).unwrap();
        let mut v = system_to_json(&sys, false);
        v["d_b"] = json!(3);
        assert!(system_from_json(&v.to_string()).is_err());
        let mut v = system_to_json(&sys, false);
        v["a0"] = json!("not base64!");
        assert!(system_from_json(&v.to_string()).is_err());
    }
}
