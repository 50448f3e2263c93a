use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use proptest::prelude::*;
use tilted_sos::algebra::shifted_operator;
use tilted_sos::certificates::{basis_polys, chsh_gram, pi8_weight, Certificate};
use tilted_sos::linalg::RMat;
use tilted_sos::sdp::{
    chsh_matrix, pi8_conditions, pi8_matrix, pi8_params_of, solve_feasible, solve_pi8, symmetrize,
    BasisKind, ChshParams, ConstraintSystem,
};
use tilted_sos::{Field, Surd, Tilt};

fn numeric_certificate(theta: f64, gram: &RMat) -> Certificate<f64> {
    let t = Tilt::numeric(theta).unwrap();
    let n = gram.nrows();
    Certificate::gram(
        "solver",
        Some(theta),
        basis_polys(&t).to_vec(),
        (0..n)
            .map(|i| (0..n).map(|j| gram[(i, j)]).collect())
            .collect(),
        shifted_operator(&t),
    )
}

fn feasible_chsh_point() -> impl Strategy<Value = ChshParams> {
    (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=0.5)
        .prop_map(|(l, m, q)| ChshParams::new(l, m, q))
        .prop_filter("inside the solution set", |p| p.conditions().feasible)
}

#[test]
fn solver_gram_expands_to_the_shifted_operator() {
    for theta in [0.1, 0.3, FRAC_PI_8, 0.6, FRAC_PI_4] {
        let cs = ConstraintSystem::for_theta(theta, BasisKind::Annihilators).unwrap();
        let r = solve_feasible(&cs).unwrap();
        let rep = numeric_certificate(theta, &r.gram).verify();
        assert!(rep.passed, "{theta}: {rep:?}");
        assert!(rep.residual_max_abs <= 1e-9);
        assert!(cs.residual(&r.gram) <= 1e-9);
    }
}

#[test]
fn pi8_solution_lies_inside_the_region() {
    let (r, p) = solve_pi8().unwrap();
    let (_, inside, margin) = pi8_conditions(&p);
    assert!(inside || margin > -1e-8, "{p:?}: {margin}");
    assert!((pi8_matrix(&p) - &r.gram).amax() <= 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn feasible_chsh_points_give_certificates(p in feasible_chsh_point()) {
        let rep = numeric_certificate(FRAC_PI_4, &chsh_matrix(&p)).verify();
        prop_assert!(rep.passed, "{:?}: {:?}", p, rep);
        prop_assert!(rep.residual_max_abs < 1e-9);
    }

    #[test]
    fn rational_chsh_points_verify_exactly(l in 0i64..=8, m in 0i64..=8, q in 0i64..=4) {
        let p = ChshParams::new(l as f64 / 8.0, m as f64 / 8.0, q as f64 / 8.0);
        prop_assume!(p.conditions().feasible);
        let t = Tilt::<Surd>::pi4();
        let gram = chsh_gram(&Surd::ratio(l, 8), &Surd::ratio(m, 8), &Surd::ratio(q, 8));
        let c = Certificate::gram("grid", Some(FRAC_PI_4), basis_polys(&t).to_vec(), gram, shifted_operator(&t));
        let rep = c.verify();
        prop_assert!(rep.passed && rep.exact, "{:?}", rep);
        prop_assert_eq!(rep.residual, "0");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Whatever the solver returns at π/8, with two diagonal entries pinned,
    /// satisfies the principal-minor conditions.
    #[test]
    fn pinned_pi8_solutions_stay_in_the_region(beta in 0.0f64..=2.0, lambda in 0.0f64..=4.0) {
        let k = pi8_weight::<f64>();
        let cs = ConstraintSystem::for_theta(FRAC_PI_8, BasisKind::Annihilators)
            .unwrap()
            .pin(0, 0, k * beta)
            .pin(3, 3, k * lambda);
        if let Ok(r) = solve_feasible(&cs) {
            let p = pi8_params_of(&symmetrize(&r.gram));
            let (_, inside, margin) = pi8_conditions(&p);
            prop_assert!(inside || margin > -1e-8, "{:?}: {}", p, margin);
        }
    }
}
