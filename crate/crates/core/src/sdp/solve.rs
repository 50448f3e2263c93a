//! PSD feasibility by alternating projections with Dykstra's correction.

use nalgebra::DVector;

use super::interior::maximize_min_eigenvalue;
use super::ConstraintSystem;
use crate::angle::Tilt;
use crate::certificates::basis_vectors;
use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, RMat};

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub max_iterations: usize,
    /// Success once the PSD iterate meets every constraint this closely.
    pub tolerance: f64,
    pub stall_window: usize,
    /// A stall only counts above this residual.
    pub stall_floor: f64,
    pub stall_relative: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100_000,
            tolerance: 1e-10,
            stall_window: 1000,
            stall_floor: 1e-6,
            stall_relative: 1e-12,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FeasibilityResult {
    pub gram: RMat,
    pub iterations: usize,
    /// Largest constraint violation of `gram`.
    pub affine_residual: f64,
    /// Most negative eigenvalue of `gram`, as a positive number (0 if PSD).
    pub psd_violation: f64,
}

/// Upper triangle, row-major, off-diagonals scaled by √2 so that
/// `svec(A)·svec(B) = tr(AB)`.
pub fn svec(m: &RMat) -> DVector<f64> {
    let n = m.nrows();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        out.push(m[(i, i)]);
        for j in i + 1..n {
            out.push(std::f64::consts::SQRT_2 * 0.5 * (m[(i, j)] + m[(j, i)]));
        }
    }
    DVector::from_vec(out)
}

pub fn unsvec(v: &DVector<f64>, n: usize) -> RMat {
    let mut m = RMat::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        m[(i, i)] = v[k];
        k += 1;
        for j in i + 1..n {
            let x = v[k] / std::f64::consts::SQRT_2;
            m[(i, j)] = x;
            m[(j, i)] = x;
            k += 1;
        }
    }
    m
}

/// Smallest eigenvalue still accepted as PSD when the affine constraints
/// hold exactly.
pub const BOUNDARY_TOL: f64 = 1e-9;

fn project_psd(v: &DVector<f64>, n: usize) -> DVector<f64> {
    let m = unsvec(v, n);
    let e = sym_eigen(&m);
    let mut out = RMat::zeros(n, n);
    for (k, &l) in e.values.iter().enumerate() {
        if l > 0.0 {
            let c = e.vectors.column(k);
            out += c * c.transpose() * l;
        }
    }
    svec(&out)
}

fn min_eigenvalue(m: &RMat) -> f64 {
    sym_eigen(m).values.first().copied().unwrap_or(0.0)
}

pub fn solve_feasible(cs: &ConstraintSystem) -> Result<FeasibilityResult> {
    solve_feasible_with(cs, &SolverOptions::default())
}

/// Find a PSD `M` with `tr(M F^i) = s^i`. Reports `Infeasible` when the
/// linear system alone is inconsistent. When the projections stall or slow
/// down above the floor, the largest smallest eigenvalue over the affine set
/// decides: nonnegative gives the solution, negative proves infeasibility.
pub fn solve_feasible_with(
    cs: &ConstraintSystem,
    opts: &SolverOptions,
) -> Result<FeasibilityResult> {
    let n = cs.basis_size;
    let rows: Vec<(DVector<f64>, f64)> = cs.rows().map(|(f, s)| (svec(f), s)).collect();
    let d = n * (n + 1) / 2;
    let a = RMat::from_fn(rows.len(), d, |i, j| rows[i].0[j]);
    let b = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let svd = a.clone().svd(true, true);
    let top = svd.singular_values.max();
    let pinv = svd
        .pseudo_inverse(1e-10 * top.max(f64::MIN_POSITIVE))
        .map_err(|e| Error::InvalidSystem(e.to_string()))?;

    let x0 = &pinv * &b;
    let inconsistency = (&a * &x0 - &b).amax();
    if inconsistency > 1e-8 * b.amax().max(1.0) {
        return Err(Error::Infeasible {
            residual: inconsistency,
        });
    }
    let project_affine = |v: &DVector<f64>| -> DVector<f64> { v - &pinv * (&a * v - &b) };

    // A diagonal entry fixed by the constraints at a negative value rules out
    // every PSD solution.
    let row_space = &pinv * &a;
    let mut k = 0;
    for i in 0..n {
        let free = (0..d).map(|j| row_space[(k, j)] - if j == k { 1.0 } else { 0.0 });
        if free.map(f64::abs).fold(0.0, f64::max) < 1e-9 && x0[k] < -1e-9 {
            return Err(Error::Infeasible { residual: -x0[k] });
        }
        k += n - i;
    }
    let affine_residual = |v: &DVector<f64>| (&a * v - &b).amax();

    let decide = |x0: &DVector<f64>| -> Result<FeasibilityResult> {
        let best = maximize_min_eigenvalue(&a, x0, n);
        let gram = unsvec(&best.point, n);
        if best.min_eigenvalue >= -BOUNDARY_TOL {
            Ok(FeasibilityResult {
                affine_residual: cs.residual(&gram),
                psd_violation: (-best.min_eigenvalue).max(0.0),
                gram,
                iterations: 0,
            })
        } else if best.upper_bound < 0.0 {
            Err(Error::Infeasible {
                residual: -best.min_eigenvalue,
            })
        } else {
            Err(Error::NotConverged {
                iterations: opts.max_iterations,
                residual: -best.min_eigenvalue,
            })
        }
    };

    let start = x0.clone();
    let mut x = x0;
    let mut p = DVector::zeros(d);
    let mut q = DVector::zeros(d);
    let mut checkpoint = f64::INFINITY;
    for it in 1..=opts.max_iterations {
        let y = project_psd(&(&x + &p), n);
        p = &x + &p - &y;
        let x_next = project_affine(&(&y + &q));
        q = &y + &q - &x_next;
        x = x_next;

        let r = affine_residual(&y);
        if r <= opts.tolerance {
            let gram = unsvec(&y, n);
            return Ok(FeasibilityResult {
                affine_residual: cs.residual(&gram),
                psd_violation: (-min_eigenvalue(&gram)).max(0.0),
                gram,
                iterations: it,
            });
        }
        if it % opts.stall_window == 0 {
            // Stalled, or improving too slowly to reach the tolerance within
            // the remaining budget even at the current rate.
            let gain = checkpoint - r;
            let windows_left = ((opts.max_iterations - it) / opts.stall_window) as f64;
            let stalled = r > opts.stall_floor && gain < opts.stall_relative * checkpoint;
            if stalled || r - opts.tolerance > gain * windows_left {
                return decide(&start).map(|f| FeasibilityResult {
                    iterations: it,
                    ..f
                });
            }
            checkpoint = r;
        }
    }
    decide(&start).map(|f| FeasibilityResult {
        iterations: opts.max_iterations,
        ..f
    })
}

/// Gram matrix over the nine operators `1, A_x, B_y, A_x B_y` equivalent to
/// `m` over the annihilator basis: `Kᵀ m K` with the rows of `K` the
/// annihilators' coordinates.
pub fn lift_to_canonical(m: &RMat, theta: f64) -> Result<RMat> {
    let t = Tilt::numeric(theta)?;
    let r = basis_vectors(&t);
    let k = RMat::from_fn(5, 9, |i, j| r[i][j]);
    Ok(k.transpose() * m * k)
}

/// Average of `M` and its image `T M T`, `T = diag(1, 1, 1, -1, -1)`, under
/// the symmetry that negates the last two annihilators.
pub fn symmetrize(m: &RMat) -> RMat {
    let n = m.nrows();
    RMat::from_fn(n, n, |i, j| {
        let sign = if (i < 3) == (j < 3) { 1.0 } else { -1.0 };
        0.5 * (m[(i, j)] + sign * m[(i, j)])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::{BasisKind, ConstraintSystem};
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn svec_is_an_isometry() {
        let m = RMat::from_fn(4, 4, |i, j| (i + 2 * j) as f64 + (i * j) as f64);
        let m = &m + m.transpose();
        let n = RMat::from_fn(4, 4, |i, j| 1.0 / (1 + i + j) as f64);
        assert!((svec(&m).dot(&svec(&n)) - m.component_mul(&n).sum()).abs() < 1e-12);
        assert!((unsvec(&svec(&m), 4) - &m).amax() < 1e-12);
    }

    #[test]
    fn finds_psd_solutions_and_rejects_the_negated_target() {
        for theta in [FRAC_PI_4, FRAC_PI_8, 0.3] {
            let cs = ConstraintSystem::for_theta(theta, BasisKind::Annihilators).unwrap();
            let r = solve_feasible(&cs).unwrap();
            assert!(
                r.affine_residual <= 1e-9 && r.psd_violation <= 1e-9,
                "{theta}: {r:?}"
            );
            let sym = symmetrize(&r.gram);
            assert!(sym[(0, 3)].abs() < 1e-15 && sym[(2, 4)].abs() < 1e-15);
            assert!((symmetrize(&sym) - &sym).amax() < 1e-15);
            assert!(cs.residual(&sym) <= 1e-9);
            assert!(min_eigenvalue(&sym) >= -1e-9);
            let neg = cs.negated();
            assert!(matches!(
                solve_feasible(&neg),
                Err(Error::Infeasible { .. })
            ));
        }
    }

    #[test]
    fn canonical_basis_through_the_annihilators() {
        let theta = 0.5;
        let cs9 = ConstraintSystem::for_theta(theta, BasisKind::Canonical).unwrap();
        let cs5 = ConstraintSystem::for_theta(theta, BasisKind::Annihilators).unwrap();
        let r = solve_feasible(&cs5).unwrap();
        let m9 = lift_to_canonical(&r.gram, theta).unwrap();
        assert!(cs9.residual(&m9) <= 1e-9);
        assert!(min_eigenvalue(&m9) >= -1e-9);
    }
}
