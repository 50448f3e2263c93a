//! Imperfect realizations of the reference system, each on `C^4 ⊗ C^4`:
//! every party holds its reference qubit followed by one extra qubit, so a
//! local index is `2·qubit + extra`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{self_test, SelfTestReport};
use crate::error::{Error, Result};
use crate::linalg::{complex, CMat, CVec};
use crate::qubit::{pauli_x, pauli_y, QubitSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseModel {
    /// Purification of `v|ψ⟩⟨ψ| + (1 - v) 1/4`; the extra qubits carry the
    /// purifying register.
    Depolarized,
    /// Bob's observables rotated about the y axis by `arccos v`.
    RotatedBob,
    /// `√v |ψ⟩|00⟩ + √(1-v) |ψ⟩|11⟩`, with Bob measuring `±σx` for both inputs
    /// when his extra qubit is `|1⟩`.
    JunkQubit,
}

pub const NOISE_MODELS: [NoiseModel; 3] = [
    NoiseModel::Depolarized,
    NoiseModel::RotatedBob,
    NoiseModel::JunkQubit,
];

impl NoiseModel {
    pub fn name(self) -> &'static str {
        match self {
            NoiseModel::Depolarized => "depolarized",
            NoiseModel::RotatedBob => "rotated-bob",
            NoiseModel::JunkQubit => "junk-qubit",
        }
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NOISE_MODELS
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidSystem(format!("unknown noise model {s:?}")))
    }
}

fn embed(m: &CMat, extra: &CMat) -> CMat {
    m.kronecker(extra)
}

fn projector(bit: usize) -> CMat {
    let mut p = CMat::zeros(2, 2);
    p[(bit, bit)] = complex(1.0, 0.0);
    p
}

/// Composite state from amplitudes `f(a_qubit, a_extra, b_qubit, b_extra)`.
fn state_from(f: impl Fn(usize, usize, usize, usize) -> f64) -> CVec {
    let mut v = CVec::zeros(16);
    for aq in 0..2 {
        for ae in 0..2 {
            for bq in 0..2 {
                for be in 0..2 {
                    v[(2 * aq + ae) * 4 + 2 * bq + be] = complex(f(aq, ae, bq, be), 0.0);
                }
            }
        }
    }
    v
}

pub fn noisy_system(model: NoiseModel, theta: f64, visibility: f64) -> Result<QubitSystem> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::InvalidSystem(format!(
            "visibility {visibility} outside [0, 1]"
        )));
    }
    let r = QubitSystem::reference(theta)?;
    let id2 = CMat::identity(2, 2);
    let (c, s) = (theta.cos(), theta.sin());
    let alice = [embed(&r.alice[0], &id2), embed(&r.alice[1], &id2)];
    let plain_bob = || [embed(&r.bob[0], &id2), embed(&r.bob[1], &id2)];
    let product = |aq: usize, ae: usize, bq: usize, be: usize| {
        if ae == 0 && be == 0 {
            r.state[2 * aq + bq].re
        } else {
            0.0
        }
    };

    let (state, bob) = match model {
        NoiseModel::Depolarized => {
            let v = visibility;
            let branches: [([f64; 4], f64); 4] = [
                ([c, 0.0, 0.0, s], v + (1.0 - v) / 4.0),
                ([s, 0.0, 0.0, -c], (1.0 - v) / 4.0),
                ([0.0, 1.0, 0.0, 0.0], (1.0 - v) / 4.0),
                ([0.0, 0.0, 1.0, 0.0], (1.0 - v) / 4.0),
            ];
            let state = state_from(|aq, ae, bq, be| {
                let (phi, p) = branches[2 * ae + be];
                p.sqrt() * phi[2 * aq + bq]
            });
            (state, plain_bob())
        }
        NoiseModel::RotatedBob => {
            let eta = visibility.acos();
            let rot = &id2 * complex((eta / 2.0).cos(), 0.0)
                - pauli_y() * complex(0.0, (eta / 2.0).sin());
            let turn = |m: &CMat| embed(&(&rot * m * rot.adjoint()), &id2);
            (state_from(product), [turn(&r.bob[0]), turn(&r.bob[1])])
        }
        NoiseModel::JunkQubit => {
            let weights = [visibility.sqrt(), (1.0 - visibility).sqrt()];
            let state = state_from(|aq, ae, bq, be| {
                if ae == be {
                    weights[ae] * r.state[2 * aq + bq].re
                } else {
                    0.0
                }
            });
            let x = pauli_x();
            let minus_x = -&x;
            let bob = [
                embed(&r.bob[0], &projector(0)) + embed(&x, &projector(1)),
                embed(&r.bob[1], &projector(0)) + embed(&minus_x, &projector(1)),
            ];
            (state, bob)
        }
    };
    QubitSystem::new(theta, state, alice, bob)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub model: NoiseModel,
    pub theta: f64,
    pub visibility: f64,
    pub report: SelfTestReport,
}

/// Full self-test on every `(model, θ, v)` combination, in parallel.
pub fn noise_sweep(
    models: &[NoiseModel],
    thetas: &[f64],
    visibilities: &[f64],
) -> Result<Vec<SweepEntry>> {
    let mut jobs = Vec::new();
    for &model in models {
        for &theta in thetas {
            for &visibility in visibilities {
                jobs.push((model, theta, visibility));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(model, theta, visibility)| {
            let report = self_test(&noisy_system(model, theta, visibility)?)?;
            Ok(SweepEntry {
                model,
                theta,
                visibility,
                report,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Tilt;
    use crate::selftest::measured_epsilon;

    #[test]
    fn full_visibility_is_ideal() {
        for model in NOISE_MODELS {
            let sys = noisy_system(model, 0.5, 1.0).unwrap();
            assert!(measured_epsilon(&sys).unwrap() < 1e-12, "{model}");
            assert_eq!(model.name().parse::<NoiseModel>().unwrap(), model);
        }
        assert!("pink".parse::<NoiseModel>().is_err());
        assert!(noisy_system(NoiseModel::Depolarized, 0.5, 1.5).is_err());
    }

    #[test]
    fn depolarizing_deficit_is_linear() {
        let theta = std::f64::consts::FRAC_PI_8;
        let i_max = Tilt::numeric(theta).unwrap().i_max;
        let sys = noisy_system(NoiseModel::Depolarized, theta, 0.99).unwrap();
        assert!((measured_epsilon(&sys).unwrap() - 0.01 * i_max).abs() < 1e-12);
    }

    #[test]
    fn junk_qubit_model_needs_regularization() {
        let sys = noisy_system(NoiseModel::JunkQubit, 0.4, 0.9).unwrap();
        let ops = crate::selftest::LocalOps::from_system(&sys).unwrap();
        let e = crate::linalg::hermitian_eigen(&ops.zb);
        assert!(e.values.iter().any(|l| l.abs() < 1e-12));
    }
}
