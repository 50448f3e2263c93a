#![allow(dead_code)]

use proptest::prelude::*;
use tilted_sos::algebra::{operator_vector, Word};
use tilted_sos::linalg::{complex, CMat, CVec};
use tilted_sos::qubit::{pauli_x, pauli_y, pauli_z, QubitSystem};
use tilted_sos::{Field, Monomial, NcPoly, Scalar};

/// `k + j·st + l·ct` with small integers.
pub fn coefficient() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i64..=2, -2i64..=2).prop_map(|(k, j, l)| {
        Scalar::from_i64(k)
            + Scalar::from_i64(j) * Scalar::st()
            + Scalar::from_i64(l) * Scalar::ct()
    })
}

pub fn word(max_len: usize) -> impl Strategy<Value = Word> {
    (0u8..2, 0..=max_len).prop_map(|(first, len)| Word::alternating(first, len))
}

pub fn monomial(max_len: usize) -> impl Strategy<Value = Monomial> {
    (word(max_len), word(max_len)).prop_map(|(a, b)| Monomial::new(a, b))
}

pub fn poly(max_len: usize) -> impl Strategy<Value = NcPoly<Scalar>> {
    prop::collection::vec((monomial(max_len), coefficient()), 0..5).prop_map(NcPoly::from_terms)
}

/// Random element of the span of `1, A_x, B_y, A_x B_y`; a zero coefficient
/// is common so that the zero polynomial shows up.
pub fn operator_span_poly() -> impl Strategy<Value = NcPoly<Scalar>> {
    prop::collection::vec(
        prop_oneof![2 => Just(Scalar::from_i64(0)), 3 => coefficient()],
        9,
    )
    .prop_map(|cs| NcPoly::from_terms(operator_vector().into_iter().zip(cs)))
}

/// `n·σ` for a unit Bloch vector given by two angles.
pub fn bloch_observable(polar: f64, azimuth: f64) -> CMat {
    let (s, c) = polar.sin_cos();
    pauli_z() * complex(c, 0.0)
        + pauli_x() * complex(s * azimuth.cos(), 0.0)
        + pauli_y() * complex(s * azimuth.sin(), 0.0)
}

/// Two-qubit system with random dichotomic observables and a random
/// normalized state.
pub fn random_qubit_system() -> impl Strategy<Value = QubitSystem> {
    let angle = || (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU);
    (
        0.05f64..=std::f64::consts::FRAC_PI_4,
        [angle(), angle(), angle(), angle()],
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4),
    )
        .prop_filter_map("nonzero state", |(theta, obs, amps)| {
            let state = CVec::from_iterator(4, amps.iter().map(|&(re, im)| complex(re, im)));
            let n = state.norm();
            if n < 1e-3 {
                return None;
            }
            let [a0, a1, b0, b1] = obs.map(|(p, z)| bloch_observable(p, z));
            QubitSystem::new(theta, state / complex(n, 0.0), [a0, a1], [b0, b1]).ok()
        })
}
