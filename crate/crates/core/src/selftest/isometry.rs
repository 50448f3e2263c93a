//! Regularized unitaries and the swap isometry extracting a qubit pair.

use serde::Serialize;

use super::slot;
use crate::angle::Tilt;
use crate::error::{Error, Result};
use crate::linalg::{complex, hermitian_eigen, CMat, CVec};
use crate::qubit::{pauli_x, pauli_z, QubitSystem};

/// Eigenvalues below this magnitude count as zero in [`regularize`].
pub const ZERO_EIGENVALUE: f64 = 1e-9;
/// Below this `‖(1 + Z'_A)ψ‖` the junk state is undefined.
pub const JUNK_NORM_FLOOR: f64 = 1e-12;

/// Same eigenvectors, eigenvalues replaced by their sign, zero mapped to +1.
pub fn regularize(h: &CMat) -> CMat {
    let e = hermitian_eigen(h);
    let n = h.nrows();
    let mut out = CMat::zeros(n, n);
    for (k, &l) in e.values.iter().enumerate() {
        let sign = if l.abs() < ZERO_EIGENVALUE || l > 0.0 {
            1.0
        } else {
            -1.0
        };
        let v = e.vectors.column(k);
        out += v * v.adjoint() * complex(sign, 0.0);
    }
    out
}

/// Local operators `Z_A = A0`, `X_A = A1`, `Z_B = (B0 + B1)/(2 cos μ)`,
/// `X_B = (B0 - B1)/(2 sin μ)`.
#[derive(Clone, Debug)]
pub struct LocalOps {
    pub za: CMat,
    pub xa: CMat,
    pub zb: CMat,
    pub xb: CMat,
}

impl LocalOps {
    pub fn from_system(sys: &QubitSystem) -> Result<Self> {
        let t = Tilt::numeric(sys.theta)?;
        let [b0, b1] = &sys.bob;
        Ok(Self {
            za: sys.alice[0].clone(),
            xa: sys.alice[1].clone(),
            zb: (b0 + b1) * complex(0.5 / t.cos_mu, 0.0),
            xb: (b0 - b1) * complex(0.5 / t.sin_mu, 0.0),
        })
    }

    pub fn regularized(&self) -> Self {
        Self {
            za: regularize(&self.za),
            xa: regularize(&self.xa),
            zb: regularize(&self.zb),
            xb: regularize(&self.xb),
        }
    }

    /// The four operators lifted to the composite space, in the order
    /// `za, xa, zb, xb`.
    pub fn lifted(&self, sys: &QubitSystem) -> [CMat; 4] {
        [
            sys.lift_alice(&self.za),
            sys.lift_alice(&self.xa),
            sys.lift_bob(&self.zb),
            sys.lift_bob(&self.xb),
        ]
    }
}

/// The isometry built from a system's regularized operators.
#[derive(Clone, Debug)]
pub struct SwapIsometry {
    za: CMat,
    xa: CMat,
    zb: CMat,
    xb: CMat,
    dim: usize,
}

impl SwapIsometry {
    pub fn new(sys: &QubitSystem) -> Result<Self> {
        let [za, xa, zb, xb] = LocalOps::from_system(sys)?.regularized().lifted(sys);
        Ok(Self {
            za,
            xa,
            zb,
            xb,
            dim: sys.dim(),
        })
    }

    pub fn input_dim(&self) -> usize {
        self.dim
    }

    /// Output index `phys·4 + 2a + b`, with `a` and `b` the ancilla bits
    /// attached to Alice and Bob.
    pub fn apply(&self, v: &CVec) -> CVec {
        let id = CMat::identity(self.dim, self.dim);
        let pa = [&id + &self.za, &id - &self.za];
        let pb = [&id + &self.zb, &id - &self.zb];
        let quarter = complex(0.25, 0.0);
        let mut out = CVec::zeros(self.dim * 4);
        for a in 0..2 {
            for b in 0..2 {
                let mut w = &pa[a] * (&pb[b] * v);
                if b == 1 {
                    w = &self.xb * w;
                }
                if a == 1 {
                    w = &self.xa * w;
                }
                for p in 0..self.dim {
                    out[p * 4 + 2 * a + b] = w[p] * quarter;
                }
            }
        }
        out
    }
}

/// `junk ⊗ w` in the isometry's output ordering.
pub fn attach_ancilla(junk: &CVec, w: &CVec) -> CVec {
    let mut out = CVec::zeros(junk.len() * 4);
    for p in 0..junk.len() {
        for k in 0..4 {
            out[p * 4 + k] = junk[p] * w[k];
        }
    }
    out
}

/// Reference state `cos θ|00⟩ + sin θ|11⟩` and observables (index 0 is the
/// identity, then `x = 0, 1`).
pub struct ReferencePair {
    pub state: CVec,
    pub alice: [CMat; 3],
    pub bob: [CMat; 3],
}

impl ReferencePair {
    pub fn new(theta: f64) -> Result<Self> {
        let r = QubitSystem::reference(theta)?;
        let id = CMat::identity(2, 2);
        Ok(Self {
            state: r.state,
            alice: [id.clone(), pauli_z(), pauli_x()],
            bob: [id, r.bob[0].clone(), r.bob[1].clone()],
        })
    }

    pub fn acted(&self, x: i8, y: i8) -> CVec {
        self.alice[slot(x)].kronecker(&self.bob[slot(y)]) * &self.state
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsometryOutput {
    #[serde(skip)]
    pub output: CVec,
    #[serde(skip)]
    pub junk: CVec,
    pub beta: f64,
    /// `‖Φ(A_x B_y ψ) - junk ⊗ (A_x B_y)ψ_ref‖`, indexed by `slot(x), slot(y)`.
    pub distances: [[f64; 3]; 3],
}

/// Apply the isometry to the state and to every `A_x ⊗ B_y` acting on it, and
/// compare with the junk state tensored with the reference.
pub fn swap_isometry(sys: &QubitSystem) -> Result<IsometryOutput> {
    sys.validate_dichotomic()?;
    let phi = SwapIsometry::new(sys)?;
    let za = sys.lift_alice(&regularize(&sys.alice[0]));
    let projected = (CMat::identity(sys.dim(), sys.dim()) + za) * &sys.state;
    let norm = projected.norm();
    if norm < JUNK_NORM_FLOOR {
        return Err(Error::DegenerateJunk { norm });
    }
    let beta = norm / (2.0 * sys.theta.cos());
    let junk = projected / complex(norm, 0.0);

    let reference = ReferencePair::new(sys.theta)?;
    let id_a = CMat::identity(sys.d_a, sys.d_a);
    let id_b = CMat::identity(sys.d_b, sys.d_b);
    let alice = [&id_a, &sys.alice[0], &sys.alice[1]];
    let bob = [&id_b, &sys.bob[0], &sys.bob[1]];
    let mut distances = [[0.0; 3]; 3];
    for x in -1..=1i8 {
        for y in -1..=1i8 {
            let v = alice[slot(x)].kronecker(bob[slot(y)]) * &sys.state;
            let target = attach_ancilla(&junk, &reference.acted(x, y));
            distances[slot(x)][slot(y)] = (phi.apply(&v) - target).norm();
        }
    }
    Ok(IsometryOutput {
        output: phi.apply(&sys.state),
        junk,
        beta,
        distances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMat {
        let m = CMat::from_fn(n, n, |_, _| {
            complex(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        (&m + m.adjoint()) * complex(0.5, 0.0)
    }

    #[test]
    fn regularize_diagonal() {
        let h = CMat::from_diagonal(&CVec::from_vec(vec![
            complex(2.0, 0.0),
            complex(-3.0, 0.0),
            complex(0.0, 0.0),
        ]));
        let r = regularize(&h);
        let expected = [1.0, -1.0, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { expected[i] } else { 0.0 };
                assert!((r[(i, j)] - complex(e, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn regularized_is_an_involution_and_polar_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2, 3, 5, 8] {
            let h = random_hermitian(n, &mut rng);
            let r = regularize(&h);
            let id = CMat::identity(n, n);
            assert!((&r * &r - &id).norm() < 1e-10);
            assert!((&r - r.adjoint()).norm() < 1e-12);
            let abs = {
                let e = hermitian_eigen(&h);
                let d = CMat::from_diagonal(&CVec::from_iterator(
                    n,
                    e.values.iter().map(|l| complex(l.abs(), 0.0)),
                ));
                &e.vectors * d * e.vectors.adjoint()
            };
            assert!((&r * &h - abs).norm() < 1e-10);
        }
    }

    #[test]
    fn reference_system_is_extracted_exactly() {
        for theta in [
            0.2,
            std::f64::consts::FRAC_PI_8,
            0.6,
            std::f64::consts::FRAC_PI_4,
        ] {
            let sys = QubitSystem::reference(theta).unwrap();
            let ops = LocalOps::from_system(&sys).unwrap();
            assert!((regularize(&ops.zb) - pauli_z()).norm() < 1e-10);
            let out = swap_isometry(&sys).unwrap();
            assert!((out.beta - 1.0).abs() < 1e-12);
            assert!((out.junk[0] - complex(1.0, 0.0)).norm() < 1e-12);
            let expected = attach_ancilla(&out.junk, &sys.state);
            assert!((&out.output - expected).norm() < 1e-12);
            assert!(
                out.distances.iter().flatten().all(|d| *d < 1e-10),
                "{:?}",
                out.distances
            );
        }
    }
}
