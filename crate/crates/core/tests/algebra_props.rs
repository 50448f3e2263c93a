mod common;

use common::{operator_span_poly, poly, random_qubit_system};
use proptest::prelude::*;
use tilted_sos::algebra::product_index;
use tilted_sos::qubit::{represent, QubitSystem};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_associates_and_distributes(x in poly(3), y in poly(3), z in poly(3)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn adjoint_reverses_products(x in poly(3), y in poly(3)) {
        prop_assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
        prop_assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn squares_of_degree_one_stay_in_the_product_basis(x in operator_span_poly()) {
        let sq = &x.adjoint() * &x;
        prop_assert!(sq.terms().all(|(m, _)| product_index(m).is_some()), "{}", sq);
        prop_assert!(sq.is_self_adjoint());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// The 4x4 representation of the reference observables is faithful on the
    /// span of `1, A_x, B_y, A_x B_y`.
    #[test]
    fn zero_exactly_when_the_representation_vanishes(
        x in operator_span_poly(),
        thetas in prop::collection::vec(0.05f64..=std::f64::consts::FRAC_PI_4, 5),
    ) {
        for theta in thetas {
            let sys = QubitSystem::reference(theta).unwrap();
            let rep = represent(&x, &sys).unwrap();
            prop_assert_eq!(x.is_zero(), rep.camax() <= 1e-10, "{} at {}", x, theta);
        }
    }

    #[test]
    fn representation_is_multiplicative(x in poly(3), y in poly(3), sys in random_qubit_system()) {
        let lhs = represent(&(&x * &y), &sys).unwrap();
        let rhs = represent(&x, &sys).unwrap() * represent(&y, &sys).unwrap();
        prop_assert!((lhs - rhs).camax() <= 1e-10);
    }
}
