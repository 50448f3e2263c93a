//! Largest smallest eigenvalue over the affine solution set, by a log-det
//! barrier method in the coordinates of the null space.

use nalgebra::DVector;

use super::solve::{svec, unsvec};
use crate::linalg::{sym_eigen, RMat};

#[derive(Clone, Debug)]
pub struct InteriorResult {
    /// Point of the affine set, in `svec` coordinates.
    pub point: DVector<f64>,
    /// Smallest eigenvalue of `point`.
    pub min_eigenvalue: f64,
    /// Upper bound on the optimum from the last completed centering step,
    /// infinite if none completed.
    pub upper_bound: f64,
}

const GAP_TOL: f64 = 1e-12;
const MAX_NEWTON: usize = 60;

fn log_det(s: &RMat) -> Option<f64> {
    s.clone()
        .cholesky()
        .map(|c| 2.0 * c.l().diagonal().iter().map(|d| d.ln()).sum::<f64>())
}

/// Maximize `τ` subject to `M(t) - τI ⪰ 0`, `M(t) = x0 + Σ t_k N_k`, where
/// `N_k` span the null space of `a`. Stops at the first centered point with
/// `τ > 0`.
pub fn maximize_min_eigenvalue(a: &RMat, x0: &DVector<f64>, n: usize) -> InteriorResult {
    let d = x0.len();
    let gram = a.transpose() * a;
    let e = sym_eigen(&gram);
    let top = e
        .values
        .iter()
        .copied()
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let null: Vec<DVector<f64>> = (0..d)
        .filter(|&k| e.values[k] <= 1e-20 * top)
        .map(|k| e.vectors.column(k).into_owned())
        .collect();
    let k = null.len();
    let dirs: Vec<RMat> = null
        .iter()
        .map(|v| unsvec(v, n))
        .chain(std::iter::once(-RMat::identity(n, n)))
        .collect();
    let m0 = unsvec(x0, n);
    let slack = |z: &DVector<f64>| -> RMat {
        dirs.iter()
            .zip(z.iter())
            .fold(m0.clone(), |acc, (dm, &zi)| acc + dm * zi)
    };

    let mut z = DVector::zeros(k + 1);
    z[k] = sym_eigen(&m0).values[0] - 1.0;
    let mut weight = 1.0;
    let mut upper_bound = f64::INFINITY;
    'outer: loop {
        let mut centered = false;
        for _ in 0..MAX_NEWTON {
            let s = slack(&z);
            let Some(inv) = s.clone().try_inverse() else {
                break 'outer;
            };
            let sd: Vec<RMat> = dirs.iter().map(|dm| &inv * dm).collect();
            let mut g = DVector::from_fn(k + 1, |i, _| sd[i].trace());
            g[k] += weight;
            let h = RMat::from_fn(k + 1, k + 1, |i, j| -(&sd[i] * &sd[j]).trace());
            let Some(step) = (-&h).cholesky().map(|c| c.solve(&g)) else {
                break 'outer;
            };
            let decrement = g.dot(&step);
            if decrement < 1e-10 {
                centered = true;
                break;
            }
            let f = |z: &DVector<f64>| log_det(&slack(z)).map(|l| weight * z[k] + l);
            let f0 = f(&z).unwrap_or(f64::NEG_INFINITY);
            let mut alpha = 1.0;
            loop {
                let cand = &z + &step * alpha;
                if let Some(fc) = f(&cand) {
                    if fc >= f0 + 0.25 * alpha * decrement {
                        z = cand;
                        break;
                    }
                }
                alpha *= 0.5;
                if alpha < 1e-12 {
                    break 'outer;
                }
            }
        }
        if centered {
            upper_bound = upper_bound.min(z[k] + 2.0 * n as f64 / weight);
            if z[k] > 0.0 {
                break;
            }
        }
        if n as f64 / weight < GAP_TOL {
            break;
        }
        weight *= 8.0;
    }
    let x = svec(&slack(&z)) + svec(&(RMat::identity(n, n) * z[k]));
    let min_eigenvalue = sym_eigen(&unsvec(&x, n)).values[0];
    InteriorResult {
        point: x,
        min_eigenvalue,
        upper_bound,
    }
}
