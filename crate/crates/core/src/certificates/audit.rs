//! Audit of an earlier closed-form certificate for the tilted family: the
//! interval on which its square roots are real, and the dimension spanned by
//! its five basis vectors.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, SQRT_2};

use serde::Serialize;

use super::basis_vectors;
use crate::angle::Tilt;
use crate::error::Result;
use crate::linalg::{numeric_rank, singular_values, RMat};

/// Bisection stops once the bracket is this narrow.
pub const BRACKET_WIDTH: f64 = 1e-8;

/// Relative singular-value threshold for the span rank.
pub const RANK_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub lower: f64,
    pub upper: f64,
    pub bracket_width: f64,
    pub iterations: [usize; 2],
    pub radicand_at_pi8: f64,
    pub q_rank: usize,
    pub q_singular_values: Vec<f64>,
}

fn gamma(theta: f64) -> f64 {
    let cb = (4.0 * theta).cos();
    ((75.0 + 25.0 * cb) * (6.0 - 2.0 * cb).sqrt() - 72.0).sqrt()
}

/// `49γ² + 9800 c γ √(3 - cos 4θ) + ω`, which must be nonnegative for the
/// certificate to be real.
pub fn radicand(theta: f64) -> f64 {
    let c = (2.0 * theta).cos();
    let cb = (4.0 * theta).cos();
    let g = gamma(theta);
    let omega = 18125.0 * (8.0 * theta).cos() - 72500.0 * cb - 108706.0;
    49.0 * g * g + 9800.0 * c * g * (3.0 - cb).sqrt() + omega
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, usize) {
    let f_lo = f(lo);
    let mut n = 0;
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        n += 1;
    }
    (0.5 * (lo + hi), n)
}

/// The five vectors `q_i` over the nine operators at angle θ, as linear
/// combinations of the `R_i`.
pub fn q_vectors(theta: f64) -> Result<[Vec<f64>; 5]> {
    let t = Tilt::numeric(theta)?;
    let r = basis_vectors(&t);
    let (c, s, sec) = (t.c, t.s, t.sec_mu);
    let cb = (4.0 * theta).cos();
    let g = gamma(theta);
    let root = (3.0 - cb).sqrt();
    let comb = |terms: &[(f64, usize)]| -> Vec<f64> {
        (0..9)
            .map(|k| terms.iter().map(|&(w, i)| w * r[i][k]).sum())
            .collect()
    };
    let a = g / (20.0 * SQRT_2);
    let b = (25.0 * sec - 9.0 - g * g / 8.0).sqrt() / (10.0 * s);
    let d = (2.0 * g - 25.0 * c * root) / (30.0 * SQRT_2);
    let e = 5.0 * c * root / (14.0 * SQRT_2);
    let f = radicand(theta).sqrt() / 420.0;
    Ok([
        comb(&[(a, 4), (-a, 3), (-0.4, 0)]),
        comb(&[(b, 0), (b * c, 1), (-b * c, 2)]),
        comb(&[(d, 0), (0.3, 4), (-0.3, 3)]),
        comb(&[(0.35, 2), (0.35, 1), (-e, 0)]),
        comb(&[(f, 0)]),
    ])
}

pub fn audit_yn() -> AuditReport {
    let (lower, n1) = bisect(radicand, 1e-6, FRAC_PI_8);
    let (upper, n2) = bisect(radicand, FRAC_PI_8, FRAC_PI_4);
    let q = q_vectors(FRAC_PI_8).expect("π/8 is in range");
    let m = RMat::from_fn(5, 9, |i, j| q[i][j]);
    AuditReport {
        lower,
        upper,
        bracket_width: BRACKET_WIDTH,
        iterations: [n1, n2],
        radicand_at_pi8: radicand(FRAC_PI_8),
        q_rank: numeric_rank(&m, RANK_TOL),
        q_singular_values: singular_values(&m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_and_rank() {
        let a = audit_yn();
        assert!((a.lower - 0.07574).abs() < 1e-4, "{}", a.lower);
        assert!((a.upper - 0.73014).abs() < 1e-4, "{}", a.upper);
        assert!(a.radicand_at_pi8 > 0.0);
        assert!(radicand(0.05) < 0.0 && radicand(0.76) < 0.0);
        assert_eq!(a.q_rank, 4);
    }
}
