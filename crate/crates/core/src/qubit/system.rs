use nalgebra::Complex;

use crate::angle::Tilt;
use crate::error::{check_theta, Error, Result};
use crate::linalg::{complex, hermitian_eigen, CMat, CVec};

/// Largest local dimension accepted for a user-supplied system.
pub const MAX_LOCAL_DIM: usize = 8;

const HERMITIAN_TOL: f64 = 1e-9;
const EIGEN_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-9;

/// A pure state on `C^{d_a} ⊗ C^{d_b}` with two observables per party.
///
/// Composite indices are `i_a·d_b + i_b`. `theta` fixes the coefficient field
/// when polynomials with angle-dependent coefficients are represented here.
#[derive(Clone, Debug)]
pub struct QubitSystem {
    pub theta: f64,
    pub d_a: usize,
    pub d_b: usize,
    pub state: CVec,
    pub alice: [CMat; 2],
    pub bob: [CMat; 2],
}

pub fn pauli_x() -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[
            complex(0.0, 0.0),
            complex(1.0, 0.0),
            complex(1.0, 0.0),
            complex(0.0, 0.0),
        ],
    )
}

pub fn pauli_z() -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[
            complex(1.0, 0.0),
            complex(0.0, 0.0),
            complex(0.0, 0.0),
            complex(-1.0, 0.0),
        ],
    )
}

pub fn pauli_y() -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[
            complex(0.0, 0.0),
            complex(0.0, -1.0),
            complex(0.0, 1.0),
            complex(0.0, 0.0),
        ],
    )
}

fn real(x: f64) -> Complex<f64> {
    complex(x, 0.0)
}

impl QubitSystem {
    /// Validated constructor: observables Hermitian with spectrum in `[-1, 1]`,
    /// state of unit norm (within 1e-9, then renormalized).
    pub fn new(theta: f64, state: CVec, a: [CMat; 2], b: [CMat; 2]) -> Result<Self> {
        let d_a = a[0].nrows();
        let d_b = b[0].nrows();
        if d_a == 0 || d_b == 0 || d_a > MAX_LOCAL_DIM || d_b > MAX_LOCAL_DIM {
            return Err(Error::InvalidSystem(format!(
                "local dimensions ({d_a}, {d_b}) must lie in 1..={MAX_LOCAL_DIM}"
            )));
        }
        for (name, m, d) in [
            ("A0", &a[0], d_a),
            ("A1", &a[1], d_a),
            ("B0", &b[0], d_b),
            ("B1", &b[1], d_b),
        ] {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::InvalidSystem(format!("{name} must be {d}x{d}")));
            }
            let asym = (m - m.adjoint()).norm();
            if asym > HERMITIAN_TOL {
                return Err(Error::InvalidSystem(format!(
                    "{name} is not Hermitian (|M - M^dag| = {asym:.3e})"
                )));
            }
            let e = hermitian_eigen(m);
            let lo = e.values[0];
            let hi = e.values[e.values.len() - 1];
            if lo < -1.0 - EIGEN_TOL || hi > 1.0 + EIGEN_TOL {
                return Err(Error::InvalidSystem(format!(
                    "{name} has spectrum [{lo}, {hi}] outside [-1, 1]"
                )));
            }
        }
        if state.len() != d_a * d_b {
            return Err(Error::InvalidSystem(format!(
                "state has length {}, expected {}",
                state.len(),
                d_a * d_b
            )));
        }
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidSystem(format!(
                "state norm {norm} differs from 1"
            )));
        }
        Ok(Self {
            theta,
            d_a,
            d_b,
            state: state / real(norm),
            alice: a,
            bob: b,
        })
    }

    /// The two-qubit system attaining the maximal value at angle θ:
    /// `cos θ|00⟩ + sin θ|11⟩`, `A0 = σz`, `A1 = σx`,
    /// `B_y = cos μ σz ± sin μ σx` with `tan μ = sin 2θ`.
    pub fn reference(theta: f64) -> Result<Self> {
        let t = Tilt::numeric(theta)?;
        let z = pauli_z();
        let x = pauli_x();
        let b0 = &z * real(t.cos_mu) + &x * real(t.sin_mu);
        let b1 = &z * real(t.cos_mu) - &x * real(t.sin_mu);
        let state = CVec::from_vec(vec![
            real(theta.cos()),
            real(0.0),
            real(0.0),
            real(theta.sin()),
        ]);
        Ok(Self {
            theta,
            d_a: 2,
            d_b: 2,
            state,
            alice: [z.clone(), x.clone()],
            bob: [b0, b1],
        })
    }

    /// Check every observable squares to the identity (eigenvalues ±1 within
    /// 1e-9), as the SOS bounds require.
    pub fn validate_dichotomic(&self) -> Result<()> {
        for (name, m) in [
            ("A0", &self.alice[0]),
            ("A1", &self.alice[1]),
            ("B0", &self.bob[0]),
            ("B1", &self.bob[1]),
        ] {
            for &l in &hermitian_eigen(m).values {
                if (l.abs() - 1.0).abs() > EIGEN_TOL {
                    return Err(Error::NonDichotomic {
                        name: name.into(),
                        eigenvalue: l,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.d_a * self.d_b
    }

    /// `M ⊗ 1` on the composite space.
    pub fn lift_alice(&self, m: &CMat) -> CMat {
        m.kronecker(&CMat::identity(self.d_b, self.d_b))
    }

    /// `1 ⊗ M` on the composite space.
    pub fn lift_bob(&self, m: &CMat) -> CMat {
        CMat::identity(self.d_a, self.d_a).kronecker(m)
    }

    /// Same system with a different angle used for coefficients.
    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        self.theta = theta;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_at_quarter_pi() {
        let s = QubitSystem::reference(std::f64::consts::FRAC_PI_4).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.state[0].re - h).abs() < 1e-15 && (s.state[3].re - h).abs() < 1e-15);
        let expected = (pauli_z() + pauli_x()) * real(h);
        assert!((&s.bob[0] - expected).norm() < 1e-15);
        s.validate_dichotomic().unwrap();
    }

    #[test]
    fn rejects_bad_inputs() {
        let r = QubitSystem::reference(0.3).unwrap();
        let mut a0 = r.alice[0].clone();
        a0[(0, 1)] = complex(0.5, 0.0);
        assert!(QubitSystem::new(
            0.3,
            r.state.clone(),
            [a0, r.alice[1].clone()],
            r.bob.clone()
        )
        .is_err());
        let big = &r.alice[0] * real(2.0);
        assert!(QubitSystem::new(
            0.3,
            r.state.clone(),
            [big, r.alice[1].clone()],
            r.bob.clone()
        )
        .is_err());
        let half = &r.alice[0] * real(0.5);
        let s = QubitSystem::new(
            0.3,
            r.state.clone(),
            [half, r.alice[1].clone()],
            r.bob.clone(),
        )
        .unwrap();
        assert!(matches!(
            s.validate_dichotomic(),
            Err(Error::NonDichotomic { .. })
        ));
        let short = CVec::from_vec(vec![real(1.0)]);
        assert!(QubitSystem::new(0.3, short, r.alice.clone(), r.bob.clone()).is_err());
    }
}
