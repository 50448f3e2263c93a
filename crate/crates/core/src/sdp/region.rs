//! Point clouds of the parameterized solution sets, for plotting elsewhere.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use rayon::prelude::*;
use serde::Serialize;

use super::{pi8_conditions, ChshParams, Pi8Params};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct RegionPoint {
    pub coords: [f64; 3],
    pub margin: f64,
}

fn lattice(n: usize, ranges: [(f64, f64); 3]) -> Vec<[f64; 3]> {
    let axis = |(lo, hi): (f64, f64)| -> Vec<f64> {
        if n < 2 {
            return vec![lo];
        }
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    };
    let [a, b, c] = ranges.map(axis);
    a.iter()
        .flat_map(|&x| {
            b.iter()
                .flat_map(|&y| c.iter().map(move |&z| [x, y, z]))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Coordinate names for the two supported angles.
pub fn region_axes(theta: f64) -> Option<[&'static str; 3]> {
    if (theta - FRAC_PI_4).abs() < 1e-12 {
        Some(["lambda", "mu", "q"])
    } else if (theta - FRAC_PI_8).abs() < 1e-12 {
        Some(["beta", "gamma", "lambda"])
    } else {
        None
    }
}

/// Feasible points of an `n³` lattice over the bounding box of the solution
/// set: `(λ, μ, q)` at π/4, `(β, γ, λ)` at π/8.
pub fn region_points(theta: f64, n: usize) -> Result<Vec<RegionPoint>> {
    let pi4 = (theta - FRAC_PI_4).abs() < 1e-12;
    let pi8 = (theta - FRAC_PI_8).abs() < 1e-12;
    if !(pi4 || pi8) {
        return Err(Error::InvalidSystem(
            "closed-form regions exist only at theta = pi/4 and pi/8".into(),
        ));
    }
    let ranges = if pi4 {
        [(0.0, 1.0), (0.0, 1.0), (0.0, 0.5)]
    } else {
        [(0.0, 2.0), (-2.0 / 3.0, 2.0 / 3.0), (0.0, 4.0)]
    };
    Ok(lattice(n, ranges)
        .into_par_iter()
        .filter_map(|c| {
            let (ok, margin) = if pi4 {
                let k = ChshParams::new(c[0], c[1], c[2]).conditions();
                (k.feasible, k.margin)
            } else {
                let (_, ok, margin) = pi8_conditions(&Pi8Params::new(c[0], c[1], c[2]));
                (ok, margin)
            };
            ok.then_some(RegionPoint { coords: c, margin })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clouds_contain_the_special_points() {
        let pts = region_points(FRAC_PI_4, 11).unwrap();
        let has = |c: [f64; 3]| {
            pts.iter()
                .any(|p| p.coords.iter().zip(c).all(|(a, b)| (a - b).abs() < 1e-12))
        };
        assert!(has([1.0, 1.0, 0.0]) && has([0.0, 0.0, 0.5]));
        let pts8 = region_points(FRAC_PI_8, 13).unwrap();
        assert!(!pts8.is_empty());
        assert!(pts8.iter().all(|p| p.margin >= -1e-12));
        assert!(region_points(0.3, 5).is_err());
    }
}
