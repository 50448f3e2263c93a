//! Measured quantities on a concrete system against their bounds.

use serde::Serialize;

use super::isometry::{attach_ancilla, swap_isometry, LocalOps, SwapIsometry};
use super::{delta_family, slot, DeltaFamily};
use crate::algebra::{tilted_chsh, NcPoly};
use crate::angle::Tilt;
use crate::certificates::{pauli_like, s_polys};
use crate::error::Result;
use crate::linalg::{complex, CMat};
use crate::qubit::{apply, expectation, pauli_x, pauli_z, QubitSystem};

/// Absolute slack granted to every comparison for rounding.
pub const CHECK_SLACK: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub passed: bool,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            bound,
            passed: measured <= bound + CHECK_SLACK,
        }
    }
}

/// `I_max - ⟨I_α⟩`, clamped at zero.
pub fn measured_epsilon(sys: &QubitSystem) -> Result<f64> {
    let t = Tilt::numeric(sys.theta)?;
    let value = expectation(&tilted_chsh(&t), sys)?;
    Ok((t.i_max - value).max(0.0))
}

fn norm_of(p: &NcPoly<f64>, sys: &QubitSystem) -> Result<f64> {
    Ok(apply(p, sys)?.norm())
}

/// Norms of the five `S_i ψ` and of the four unregularized identities.
pub fn sos_norm_bounds(sys: &QubitSystem) -> Result<Vec<BoundCheck>> {
    let t = Tilt::numeric(sys.theta)?;
    let d = delta_family(sys.theta, measured_epsilon(sys)?)?;
    let mut out = Vec::with_capacity(9);
    for (i, p) in s_polys(&t).iter().enumerate() {
        let bound = if i < 4 {
            d.delta
        } else {
            0.5 * (t.c + t.sec_mu) * d.delta
        };
        out.push(BoundCheck::new(
            format!("|S{} psi|", i + 1),
            norm_of(p, sys)?,
            bound,
        ));
    }

    let p = pauli_like(&t);
    let one = NcPoly::<f64>::one();
    let (sin_t, cos_t) = (sys.theta.sin(), sys.theta.cos());
    let z_diff = &p.za - &p.zb;
    let x_swap =
        &(&p.xa * &(&one + &p.zb)).scale(&sin_t) - &(&p.xb * &(&one - &p.za)).scale(&cos_t);
    let x_link = &p.xb - &(&p.xa * &(&one - &p.zb.scale(&t.c))).scale(&(1.0 / t.s));
    let anti_a = &(&p.za * &p.xa) + &(&p.xa * &p.za);
    for (name, poly, bound) in [
        ("|(Z_A - Z_B) psi|", z_diff, d.delta1),
        (
            "|(sin X_A (1 + Z_B) - cos X_B (1 - Z_A)) psi|",
            x_swap,
            d.delta2,
        ),
        ("|(X_B - X_A (1 - c Z_B)/s) psi|", x_link, d.delta5),
        ("|{Z_A, X_A} psi|", anti_a, d.delta_a_a),
    ] {
        out.push(BoundCheck::new(name, norm_of(&poly, sys)?, bound));
    }
    Ok(out)
}

/// `P` on one of the two ancilla qubits of the isometry output.
fn on_ancilla(dim: usize, alice: bool, p: &CMat) -> CMat {
    let id2 = CMat::identity(2, 2);
    let local = if alice {
        p.kronecker(&id2)
    } else {
        id2.kronecker(p)
    };
    CMat::identity(dim, dim).kronecker(&local)
}

/// Regularization steps, the state extraction, and the single-operator
/// actions through the isometry.
pub fn regularized_norm_bounds(sys: &QubitSystem) -> Result<Vec<BoundCheck>> {
    let d = delta_family(sys.theta, measured_epsilon(sys)?)?;
    let local = LocalOps::from_system(sys)?;
    let [za, xa, zb, xb] = local.lifted(sys);
    let [rza, rxa, rzb, rxb] = local.regularized().lifted(sys);
    let psi = &sys.state;
    let n = sys.dim();
    let id = CMat::identity(n, n);
    let (sin_t, cos_t) = (sys.theta.sin(), sys.theta.cos());
    let r = |x: f64| complex(x, 0.0);

    let mut out = vec![
        BoundCheck::new("|(Z'_B - Z_B) psi|", ((&rzb - &zb) * psi).norm(), d.delta1),
        BoundCheck::new(
            "|(Z'_B - Z'_A) psi|",
            ((&rzb - &rza) * psi).norm(),
            2.0 * d.delta1,
        ),
        BoundCheck::new("|(X'_B - X_B) psi|", ((&rxb - &xb) * psi).norm(), d.delta4),
        BoundCheck::new(
            "|(cos X'_B (1 - Z'_A) - sin X'_A (1 + Z'_B)) psi|",
            ((&rxb * (&id - &rza) * r(cos_t) - &rxa * (&id + &rzb) * r(sin_t)) * psi).norm(),
            d.delta2p,
        ),
        BoundCheck::new(
            "|{X'_B, Z'_B} psi|",
            ((&rxb * &rzb + &rzb * &rxb) * psi).norm(),
            d.delta_a_b,
        ),
    ];

    let iso = swap_isometry(sys)?;
    let phi = SwapIsometry::new(sys)?;
    let reference = super::isometry::ReferencePair::new(sys.theta)?;
    let extracted = attach_ancilla(&iso.junk, &reference.state);
    out.push(BoundCheck::new(
        "|Phi(psi) - beta junk psi_ref|",
        (&iso.output - &extracted * r(iso.beta)).norm(),
        d.delta_bar,
    ));
    out.push(BoundCheck::new(
        "|1 - beta|",
        (1.0 - iso.beta).abs(),
        d.delta_bar,
    ));
    out.push(BoundCheck::new(
        "|Phi(psi) - junk psi_ref|",
        (&iso.output - &extracted).norm(),
        2.0 * d.delta_bar,
    ));

    let base = &iso.output;
    let actions: [(&str, &CMat, bool, CMat, f64); 4] = [
        ("|Phi(Z_A psi) - sz_A Phi(psi)|", &za, true, pauli_z(), 0.0),
        (
            "|Phi(X_A psi) - sx_A Phi(psi)|",
            &xa,
            true,
            pauli_x(),
            2.0 * d.delta_a_a,
        ),
        (
            "|Phi(Z_B psi) - sz_B Phi(psi)|",
            &zb,
            false,
            pauli_z(),
            d.delta1,
        ),
        (
            "|Phi(X_B psi) - sx_B Phi(psi)|",
            &xb,
            false,
            pauli_x(),
            d.delta4 + 2.0 * d.delta_a_b,
        ),
    ];
    for (name, op, alice, pauli, bound) in actions {
        let lhs = phi.apply(&(op * psi));
        let rhs = on_ancilla(n, alice, &pauli) * base;
        out.push(BoundCheck::new(name, (lhs - rhs).norm(), bound));
    }
    Ok(out)
}

/// Everything measured on one system.
#[derive(Clone, Debug, Serialize)]
pub struct SelfTestReport {
    pub theta: f64,
    pub epsilon: f64,
    pub bounds: DeltaFamily,
    pub beta: f64,
    pub sos_checks: Vec<BoundCheck>,
    pub regularized_checks: Vec<BoundCheck>,
    /// `e[x,y]` entries: isometry distance against `e_xy(ε)`.
    pub distances: Vec<BoundCheck>,
    pub passed: bool,
}

impl SelfTestReport {
    pub fn all_checks(&self) -> impl Iterator<Item = &BoundCheck> {
        self.sos_checks
            .iter()
            .chain(&self.regularized_checks)
            .chain(&self.distances)
    }

    pub fn distance(&self, x: i8, y: i8) -> f64 {
        self.distances[3 * slot(x) + slot(y)].measured
    }
}

/// Validate dichotomicity, measure ε, and run every check.
pub fn self_test(sys: &QubitSystem) -> Result<SelfTestReport> {
    sys.validate_dichotomic()?;
    let epsilon = measured_epsilon(sys)?;
    let bounds = delta_family(sys.theta, epsilon)?;
    let iso = swap_isometry(sys)?;
    let mut distances = Vec::with_capacity(9);
    for x in -1..=1i8 {
        for y in -1..=1i8 {
            distances.push(BoundCheck::new(
                format!("e[{x},{y}]"),
                iso.distances[slot(x)][slot(y)],
                bounds.e_at(x, y),
            ));
        }
    }
    let mut report = SelfTestReport {
        theta: sys.theta,
        epsilon,
        beta: iso.beta,
        sos_checks: sos_norm_bounds(sys)?,
        regularized_checks: regularized_norm_bounds(sys)?,
        distances,
        bounds,
        passed: false,
    };
    let passed = report.all_checks().all(|c| c.passed);
    report.passed = passed;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn reference_system_measures_zero() {
        for theta in [
            0.3,
            std::f64::consts::FRAC_PI_8,
            std::f64::consts::FRAC_PI_4,
        ] {
            let sys = QubitSystem::reference(theta).unwrap();
            let r = self_test(&sys).unwrap();
            assert!(r.epsilon < 1e-12);
            assert!(r.passed);
            assert!(r.all_checks().all(|c| c.measured < 1e-10), "{r:#?}");
        }
    }

    #[test]
    fn non_dichotomic_observables_are_rejected() {
        let r = QubitSystem::reference(0.4).unwrap();
        let soft = &r.bob[0] * complex(0.9, 0.0);
        let sys = QubitSystem::new(
            0.4,
            r.state.clone(),
            r.alice.clone(),
            [soft, r.bob[1].clone()],
        )
        .unwrap();
        assert!(matches!(self_test(&sys), Err(Error::NonDichotomic { .. })));
        assert!(matches!(
            swap_isometry(&sys),
            Err(Error::NonDichotomic { .. })
        ));
    }

    #[test]
    fn junk_is_undefined_when_the_projection_vanishes() {
        let r = QubitSystem::reference(0.4).unwrap();
        let minus = -CMat::identity(2, 2);
        let sys = QubitSystem::new(
            0.4,
            r.state.clone(),
            [minus, r.alice[1].clone()],
            r.bob.clone(),
        )
        .unwrap();
        assert!(matches!(
            swap_isometry(&sys),
            Err(Error::DegenerateJunk { .. })
        ));
    }
}
