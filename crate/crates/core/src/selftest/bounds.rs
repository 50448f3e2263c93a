//! Closed-form robustness bounds as functions of the angle and the deficit ε.

use serde::Serialize;

use crate::angle::Tilt;
use crate::error::Result;

/// Index of `x ∈ {-1, 0, 1}` into a length-3 array.
pub fn slot(x: i8) -> usize {
    (x + 1) as usize
}

/// Every bound in the chain, for one `(θ, ε)`.
///
/// `e_prime[slot(x)][slot(y)]` and `e[..][..]` use the convention that
/// subscript `-1` is the identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaFamily {
    pub theta: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta4: f64,
    pub delta5: f64,
    pub delta_a_a: f64,
    pub delta_a_b: f64,
    pub delta2p: f64,
    pub delta_bar: f64,
    pub e_prime: [[f64; 3]; 3],
    pub e: [[f64; 3]; 3],
}

impl DeltaFamily {
    pub fn e_at(&self, x: i8, y: i8) -> f64 {
        self.e[slot(x)][slot(y)]
    }

    /// Named scalar entries in a fixed order, for tabular output.
    pub fn scalars(&self) -> [(&'static str, f64); 9] {
        [
            ("delta", self.delta),
            ("delta1", self.delta1),
            ("delta2", self.delta2),
            ("delta4", self.delta4),
            ("delta5", self.delta5),
            ("delta_aA", self.delta_a_a),
            ("delta_aB", self.delta_a_b),
            ("delta2p", self.delta2p),
            ("delta_bar", self.delta_bar),
        ]
    }
}

pub fn delta_family(theta: f64, epsilon: f64) -> Result<DeltaFamily> {
    let t = Tilt::numeric(theta)?;
    let (c, s, sec) = (t.c, t.s, t.sec_mu);
    let (cos_t, sin_t) = (theta.cos(), theta.sin());
    let delta = (2.0 * t.i_max * epsilon.max(0.0)).sqrt();
    let s2 = s * s;

    let delta1 = (1.0 + c) * (c + sec) / (2.0 * s2) * delta;
    let delta2 = sec / (8.0 * sin_t) * ((2.0 - c) + sec) * delta;
    let delta5 = sec * (c + sec) / (4.0 * s) * delta;
    let delta_a_a = sec / (2.0 * s2) * (1.0 + c + sec) * delta;
    let delta4 = (1.0 + sec) / s2 * delta1;
    let delta2p = delta2 + 2.0 * delta4 * cos_t + delta1 * sin_t;
    let delta_bar = (4.0 + theta.tan()) * delta1 + delta2p / (2.0 * cos_t);
    let delta_a_b = 2.0 * delta1
        + 2.0 * delta4
        + 2.0 * delta5
        + (1.0 + c * sec) / s * (2.0 * delta1 + delta_a_a);

    let bob = delta1 * t.cos_mu + (delta4 + 2.0 * delta_a_b) * t.sin_mu;
    let e_prime = [
        [0.0, bob, bob],
        [0.0, bob, bob],
        [
            2.0 * delta_a_a,
            2.0 * delta_a_a + bob,
            2.0 * delta_a_a + bob,
        ],
    ];
    let e = e_prime.map(|row| row.map(|v| v + 2.0 * delta_bar));
    Ok(DeltaFamily {
        theta,
        epsilon,
        delta,
        delta1,
        delta2,
        delta4,
        delta5,
        delta_a_a,
        delta_a_b,
        delta2p,
        delta_bar,
        e_prime,
        e,
    })
}

/// Parse `a:b:n` into `n` evenly spaced points from `a` to `b`.
pub fn parse_grid(spec: &str) -> Option<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return None;
    };
    let (a, b) = (a.trim().parse::<f64>().ok()?, b.trim().parse::<f64>().ok()?);
    let n: usize = n.trim().parse().ok()?;
    match n {
        0 => None,
        1 => Some(vec![a]),
        _ => Some(
            (0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect(),
        ),
    }
}

/// The δ-family over a `θ × ε` grid, rows ordered by θ then ε.
pub fn bound_sweep(thetas: &[f64], epsilons: &[f64]) -> Result<Vec<DeltaFamily>> {
    let mut out = Vec::with_capacity(thetas.len() * epsilons.len());
    for &theta in thetas {
        for &eps in epsilons {
            out.push(delta_family(theta, eps)?);
        }
    }
    Ok(out)
}

/// Column names of [`bound_sweep_rows`].
pub fn bound_sweep_header() -> Vec<String> {
    let mut h = vec!["theta".to_string(), "epsilon".to_string()];
    h.extend(
        delta_family(0.5, 0.0)
            .unwrap()
            .scalars()
            .iter()
            .map(|(n, _)| n.to_string()),
    );
    for x in -1..=1 {
        for y in -1..=1 {
            h.push(format!("e[{x},{y}]"));
        }
    }
    h
}

pub fn bound_sweep_row(d: &DeltaFamily) -> Vec<f64> {
    let mut row = vec![d.theta, d.epsilon];
    row.extend(d.scalars().iter().map(|(_, v)| *v));
    row.extend(d.e.iter().flatten());
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, SQRT_2};

    #[test]
    fn quarter_pi_closed_form() {
        let d = delta_family(FRAC_PI_4, 0.01).unwrap();
        let delta = (2.0 * 2.0 * SQRT_2 * 0.01f64).sqrt();
        assert!((d.delta - delta).abs() < 1e-15);
        assert!((d.delta1 - delta / SQRT_2).abs() < 1e-15);
        assert!((d.delta5 - delta / 2.0).abs() < 1e-15);
        assert!((d.delta4 - (1.0 + SQRT_2) * d.delta1).abs() < 1e-14);
    }

    #[test]
    fn structure() {
        for theta in [0.1, FRAC_PI_8, 0.6, FRAC_PI_4] {
            let d = delta_family(theta, 1e-4).unwrap();
            assert_eq!(d.e_prime[slot(-1)][slot(-1)], 0.0);
            assert_eq!(d.e_prime[slot(0)][slot(-1)], 0.0);
            for (a, b) in d.e.iter().flatten().zip(d.e_prime.iter().flatten()) {
                assert_eq!(*a, b + 2.0 * d.delta_bar);
            }
            let zero = delta_family(theta, 0.0).unwrap();
            assert!(zero.e.iter().flatten().all(|v| *v == 0.0));
            assert!(zero.scalars().iter().all(|(_, v)| *v == 0.0));
        }
    }

    #[test]
    fn square_root_scaling() {
        let a = delta_family(0.3, 1e-3).unwrap();
        let b = delta_family(0.3, 4e-3).unwrap();
        for (x, y) in bound_sweep_row(&a)[2..]
            .iter()
            .zip(&bound_sweep_row(&b)[2..])
        {
            assert!((y / x - 2.0).abs() < 1e-12);
        }
        assert!(delta_family(0.01, 1e-3).unwrap().delta1 > 100.0 * a.delta1);
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:3"), Some(vec![0.0, 0.5, 1.0]));
        assert_eq!(parse_grid("0.2:0.2:1"), Some(vec![0.2]));
        assert!(parse_grid("0:1").is_none() && parse_grid("0:1:0").is_none());
        let rows = bound_sweep(&[0.3, 0.5], &[1e-4, 1e-3]).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(bound_sweep_header().len(), bound_sweep_row(&rows[0]).len());
    }
}
