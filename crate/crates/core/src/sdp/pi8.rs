//! The solution set at θ = π/8, parameterized by `(β, γ, λ)`.

use std::f64::consts::{FRAC_PI_8, SQRT_2};

use serde::Serialize;

use super::{solve_feasible, symmetrize, BasisKind, ConstraintSystem, FeasibilityResult};
use crate::certificates::{pi8_cusp_factors, pi8_gram, pi8_weight};
use crate::error::Result;
use crate::linalg::{psd_factor, singular_values, RMat};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Pi8Params {
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl Pi8Params {
    pub fn new(beta: f64, gamma: f64, lambda: f64) -> Self {
        Self {
            beta,
            gamma,
            lambda,
        }
    }
}

/// The Gram matrix divided by its weight `k`.
fn unscaled(p: &Pi8Params) -> RMat {
    pi8_matrix(p) / pi8_weight::<f64>()
}

pub fn pi8_matrix(p: &Pi8Params) -> RMat {
    let g = pi8_gram::<f64>(&p.beta, &p.gamma, &p.lambda);
    RMat::from_fn(5, 5, |i, j| g[i][j])
}

pub fn pi8_params_of(m: &RMat) -> Pi8Params {
    let k = pi8_weight::<f64>();
    Pi8Params::new(m[(0, 0)] / k, m[(0, 2)] * SQRT_2 / (3.0 * k), m[(3, 3)] / k)
}

fn blocks(m: &RMat) -> [RMat; 2] {
    [
        m.view((0, 0), (3, 3)).into_owned(),
        m.view((3, 3), (2, 2)).into_owned(),
    ]
}

fn principal_minors(b: &RMat) -> Vec<f64> {
    let n = b.nrows();
    (1u32..(1 << n))
        .map(|mask| {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            RMat::from_fn(idx.len(), idx.len(), |i, j| b[(idx[i], idx[j])]).determinant()
        })
        .collect()
}

/// Every principal minor of both diagonal blocks (of `M/k`), with the
/// smallest as the margin.
pub fn pi8_conditions(p: &Pi8Params) -> (Vec<f64>, bool, f64) {
    let m = unscaled(p);
    let minors: Vec<f64> = blocks(&m).iter().flat_map(principal_minors).collect();
    let margin = minors.iter().copied().fold(f64::INFINITY, f64::min);
    (minors, margin >= -1e-12, margin)
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspReport {
    pub params: Pi8Params,
    /// Singular values of the two blocks of `M/k`, descending.
    pub singular_values: [Vec<f64>; 2],
    pub rank_one: bool,
    /// Recovered factor rows with `M = k·NᵀN`, sign-aligned with the
    /// reference rows.
    pub factor: [Vec<f64>; 2],
    pub reference: [Vec<f64>; 2],
    pub max_deviation: f64,
}

fn embed(row: &[f64], offset: usize) -> Vec<f64> {
    let mut v = vec![0.0; 5];
    v[offset..offset + row.len()].copy_from_slice(row);
    v
}

/// Check both printed cusps: each block must have rank one, and the factor
/// recovered from the eigendecomposition must match the reference rows up
/// to sign.
pub fn pi8_cusps() -> Vec<CuspReport> {
    pi8_cusp_factors::<f64>()
        .into_iter()
        .map(|([b, g, l], rows)| {
            let params = Pi8Params::new(b, g, l);
            let bl = blocks(&unscaled(&params));
            let sv = [singular_values(&bl[0]), singular_values(&bl[1])];
            let rank_one = sv
                .iter()
                .all(|s| s.len() < 2 || s[1] <= 1e-9 * s[0].max(1e-300));
            let mut factor = [Vec::new(), Vec::new()];
            let mut max_dev = 0.0f64;
            for (k, (block, offset)) in bl.iter().zip([0, 3]).enumerate() {
                let l = psd_factor(block, 1e-12).unwrap_or_else(|_| RMat::zeros(0, block.ncols()));
                let top =
                    (0..l.nrows()).max_by(|&i, &j| l.row(i).norm().total_cmp(&l.row(j).norm()));
                let mut v = match top {
                    Some(i) => embed(
                        l.row(i).iter().copied().collect::<Vec<_>>().as_slice(),
                        offset,
                    ),
                    None => vec![0.0; 5],
                };
                let dot: f64 = v.iter().zip(&rows[k]).map(|(a, b)| a * b).sum();
                if dot < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                let dev = v
                    .iter()
                    .zip(&rows[k])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                max_dev = max_dev.max(dev);
                factor[k] = v;
            }
            CuspReport {
                params,
                singular_values: sv,
                rank_one,
                factor,
                reference: rows,
                max_deviation: max_dev,
            }
        })
        .collect()
}

/// Solve at π/8 over the annihilator basis, symmetrize, and read off the
/// parameters.
pub fn solve_pi8() -> Result<(FeasibilityResult, Pi8Params)> {
    let cs = ConstraintSystem::for_theta(FRAC_PI_8, BasisKind::Annihilators)?;
    let mut r = solve_feasible(&cs)?;
    r.gram = symmetrize(&r.gram);
    let p = pi8_params_of(&r.gram);
    Ok((r, p))
}
