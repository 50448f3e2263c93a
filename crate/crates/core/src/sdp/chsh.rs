//! The solution set at θ = π/4, parameterized by `(λ, μ, q)`.

use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{solve_feasible, symmetrize, BasisKind, ConstraintSystem, FeasibilityResult};
use crate::certificates::chsh_gram;
use crate::error::{Error, Result};
use crate::field::{Field, Surd};
use crate::linalg::{numeric_rank, RMat};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChshParams {
    pub lambda: f64,
    pub mu: f64,
    pub q: f64,
}

impl ChshParams {
    pub fn new(lambda: f64, mu: f64, q: f64) -> Self {
        Self { lambda, mu, q }
    }

    /// `1 - λ - q`.
    pub fn gamma(&self) -> f64 {
        1.0 - self.lambda - self.q
    }

    /// `1 - q - μ`.
    pub fn t(&self) -> f64 {
        1.0 - self.q - self.mu
    }

    /// `λ, μ, q, γ, t ≥ 0` and `γt - q² ≥ 0`.
    pub fn conditions(&self) -> ChshConditions {
        let values = [
            self.lambda,
            self.mu,
            self.q,
            self.gamma(),
            self.t(),
            self.gamma() * self.t() - self.q * self.q,
        ];
        let margin = values.iter().copied().fold(f64::INFINITY, f64::min);
        ChshConditions {
            values,
            feasible: margin >= 0.0,
            margin,
        }
    }

    /// The conditions with `λt - q² ≥ 0` in place of `γt - q² ≥ 0` and no
    /// separate `γ ≥ 0`.
    pub fn alternative_conditions_hold(&self) -> bool {
        [
            self.lambda,
            self.mu,
            self.q,
            self.t(),
            self.lambda * self.t() - self.q * self.q,
        ]
        .iter()
        .all(|&v| v >= 0.0)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChshConditions {
    /// `[λ, μ, q, γ, t, γt - q²]`.
    pub values: [f64; 6],
    pub feasible: bool,
    /// Smallest condition value: the distance-like margin from the boundary.
    pub margin: f64,
}

pub fn chsh_matrix(p: &ChshParams) -> RMat {
    let g = chsh_gram::<f64>(&p.lambda, &p.mu, &p.q);
    RMat::from_fn(5, 5, |i, j| g[i][j])
}

/// Read `(λ, μ, q)` off a Gram matrix over the annihilator basis at π/4.
pub fn chsh_params_of(m: &RMat) -> ChshParams {
    let k = 2.0 * SQRT_2;
    ChshParams::new(k * m[(0, 0)], k * m[(3, 3)], k * m[(4, 4)])
}

/// The π/4 constraints with the three diagonal entries fixing `(λ, μ, q)`.
pub fn chsh_constraints(p: &ChshParams) -> Result<ConstraintSystem> {
    static BASE: OnceLock<ConstraintSystem> = OnceLock::new();
    let base = match BASE.get() {
        Some(b) => b.clone(),
        None => {
            let b = ConstraintSystem::for_theta(FRAC_PI_4, BasisKind::Annihilators)?;
            BASE.get_or_init(|| b).clone()
        }
    };
    let k = 1.0 / (2.0 * SQRT_2);
    Ok(base
        .pin(0, 0, k * p.lambda)
        .pin(3, 3, k * p.mu)
        .pin(4, 4, k * p.q))
}

/// Run the general solver at a parameter point. `Ok` means feasible.
pub fn solve_chsh_point(p: &ChshParams) -> Result<FeasibilityResult> {
    let cs = chsh_constraints(p)?;
    let mut r = solve_feasible(&cs)?;
    r.gram = symmetrize(&r.gram);
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct GridPoint {
    pub params: ChshParams,
    pub conditions: ChshConditions,
    /// `None` when the solver neither converged nor declared infeasibility.
    pub solver_feasible: Option<bool>,
    pub iterations: usize,
}

/// Closed-form conditions and solver verdict on an `n³` grid over `[lo, hi]³`.
pub fn chsh_grid(n: usize, lo: f64, hi: f64) -> Vec<GridPoint> {
    let step = if n > 1 {
        (hi - lo) / (n - 1) as f64
    } else {
        0.0
    };
    let coords: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    let mut points = Vec::with_capacity(n * n * n);
    for &l in &coords {
        for &m in &coords {
            for &q in &coords {
                points.push(ChshParams::new(l, m, q));
            }
        }
    }
    points
        .into_par_iter()
        .map(|params| {
            let (solver_feasible, iterations) = match solve_chsh_point(&params) {
                Ok(r) => (Some(true), r.iterations),
                Err(Error::Infeasible { .. }) => (Some(false), 0),
                Err(_) => (None, 0),
            };
            GridPoint {
                params,
                conditions: params.conditions(),
                solver_feasible,
                iterations,
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ChshVertex {
    pub name: String,
    pub params: ChshParams,
    pub gram: Vec<Vec<Surd>>,
    pub rank: usize,
    /// No probed direction `d` has both `p ± h·d` feasible.
    pub extremal: bool,
}

/// Number of random directions and step used for the extremality probe.
pub const PROBE_DIRECTIONS: usize = 26;
pub const PROBE_STEP: f64 = 1e-4;

fn probe_extremal(p: &ChshParams, rng: &mut ChaCha8Rng) -> bool {
    (0..PROBE_DIRECTIONS).all(|_| {
        let d: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let at = |s: f64| {
            ChshParams::new(
                p.lambda + s * PROBE_STEP * d[0],
                p.mu + s * PROBE_STEP * d[1],
                p.q + s * PROBE_STEP * d[2],
            )
            .conditions()
            .feasible
        };
        !(at(1.0) && at(-1.0))
    })
}

/// The five vertices of the π/4 solution set with exact Gram matrices.
pub fn enumerate_chsh_vertices() -> Vec<ChshVertex> {
    let r = |n, d| Surd::ratio(n, d);
    let exact = [
        (r(0, 1), r(0, 1), r(0, 1)),
        (r(1, 1), r(0, 1), r(0, 1)),
        (r(0, 1), r(1, 1), r(0, 1)),
        (r(1, 1), r(1, 1), r(0, 1)),
        (r(0, 1), r(0, 1), r(1, 2)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    exact
        .iter()
        .enumerate()
        .map(|(k, (l, m, q))| {
            let params = ChshParams::new(l.to_f64(), m.to_f64(), q.to_f64());
            let gram = chsh_gram(l, m, q);
            ChshVertex {
                name: format!("C{}", k + 1),
                params,
                rank: numeric_rank(&chsh_matrix(&params), 1e-9),
                extremal: probe_extremal(&params, &mut rng),
                gram,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sym_eigen;

    #[test]
    fn closed_form_examples() {
        assert!(ChshParams::new(1.0, 1.0, 0.0).conditions().feasible);
        assert!(ChshParams::new(0.0, 0.0, 0.5).conditions().feasible);
        let bad = ChshParams::new(0.0, 0.0, 1.0).conditions();
        assert!(!bad.feasible);
        assert_eq!(bad.values[5], -1.0);
    }

    #[test]
    fn conditions_match_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let p = ChshParams::new(
                rng.gen_range(-0.2..1.2),
                rng.gen_range(-0.2..1.2),
                rng.gen_range(-0.2..1.2),
            );
            let min = sym_eigen(&chsh_matrix(&p)).values[0];
            let c = p.conditions();
            if c.margin.abs() > 1e-9 {
                assert_eq!(c.feasible, min >= 0.0, "{p:?}");
            }
        }
    }

    #[test]
    fn vertices() {
        let v = enumerate_chsh_vertices();
        assert_eq!(v.len(), 5);
        let k = 1.0 / (2.0 * SQRT_2);
        let c1 = chsh_matrix(&v[0].params);
        let nonzero: Vec<f64> = (0..5).map(|i| c1[(i, i)]).filter(|x| *x != 0.0).collect();
        assert_eq!(nonzero.len(), 2);
        assert!(nonzero.iter().all(|x| (x - k).abs() < 1e-15));
        for x in &v {
            assert!(x.rank < 5, "{}", x.name);
            assert!(x.extremal, "{}", x.name);
            assert!(x.params.conditions().feasible);
        }
        let centroid = ChshParams::new(0.4, 0.4, 0.1);
        assert!(centroid.conditions().feasible);
        let m = chsh_matrix(&centroid);
        let block = RMat::from_fn(2, 2, |i, j| m[(i + 1, j + 1)]);
        assert!(block.determinant() > 0.0);
    }

    #[test]
    fn solver_agrees_at_sample_points() {
        for (p, feasible) in [
            (ChshParams::new(0.3, 0.4, 0.2), true),
            (ChshParams::new(0.3, 0.2, 0.2), true),
            (ChshParams::new(0.6, 0.2, 0.3), false),
            (ChshParams::new(-0.1, 0.4, 0.2), false),
            (ChshParams::new(0.5, 0.5, 0.45), false),
        ] {
            let r = solve_chsh_point(&p);
            assert_eq!(r.is_ok(), feasible, "{p:?}: {r:?}");
            if let Ok(r) = r {
                let back = chsh_params_of(&r.gram);
                assert!((back.lambda - p.lambda).abs() < 1e-8);
                assert!(back.conditions().feasible || back.conditions().margin > -1e-8);
            }
        }
    }
}
