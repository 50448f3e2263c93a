//! Exact operator identities relating the `S_i` to the operators used in the
//! self-testing argument, and the space of operators annihilating the
//! reference state.

use super::{
    basis_vectors, candidate_polys, identity_report, pauli_like, s_polys, to_operator_vector,
};
use super::{VerificationReport, SAMPLE_ANGLES};
use crate::algebra::NcPoly;
use crate::angle::Tilt;
use crate::error::{check_theta, Error, Result};
use crate::field::{Evaluate, Field, Scalar};
use crate::linalg::{determinant, kernel, numeric_rank, rank, rref, RMat};
use crate::qubit::operator_images;

/// `S_5 - A1·(-c/2·S_2 - sec μ/2·S_4)`.
pub fn s5_relation_residual<F: Field>(t: &Tilt<F>) -> NcPoly<F> {
    let [_, s2, _, s4, s5] = s_polys(t);
    let half = F::ratio(1, 2);
    let inner = &s2.scale(&-(t.c.clone() * half.clone())) - &s4.scale(&(t.sec_mu.clone() * half));
    &s5 - &(&NcPoly::a(1) * &inner)
}

pub fn s5_relation_check() -> VerificationReport {
    let t = Tilt::<Scalar>::symbolic();
    identity_report("S5 relation", &s5_relation_residual(&t), &SAMPLE_ANGLES)
}

/// Residuals of the four linear decompositions, denominators cleared:
///
/// 1. `4s²(Z_A - Z_B) - sec μ·(c S_1 + sec μ S_3 + 2c S_5)`
/// 2. `8 sin θ cos μ·[sin θ X_A(1 + Z_B) - cos θ X_B(1 - Z_A)] - ((c - 2) S_2 + sec μ S_4)`
/// 3. `4s² cos μ·(A0A1 + A1A0) - (-2S_2 + A0(-c S_2 + sec μ S_4) + A1(c S_1 + sec μ S_3))`
/// 4. `2 cos μ·(s X_B - X_A(1 - c Z_B)) - A1 S_5`
///
/// The second needs `sin θ` and `cos θ` and is skipped when the field lacks them.
pub fn decomposition_residuals<F: Field>(t: &Tilt<F>) -> Vec<(&'static str, NcPoly<F>)> {
    let p = pauli_like(t);
    let [s1, s2, s3, s4, s5] = s_polys(t);
    let (c, s, u, sec) = (&t.c, &t.s, &t.cos_mu, &t.sec_mu);
    let n = |k: i64| F::from_i64(k);
    let one = NcPoly::one();
    let s_sq = s.clone() * s.clone();
    let (a0, a1) = (NcPoly::a(0), NcPoly::a(1));

    let mut out = Vec::new();
    let lhs = (&p.za - &p.zb).scale(&(n(4) * s_sq.clone()));
    let rhs = &(&s1.scale(c) + &s3.scale(sec)) + &s5.scale(&(n(2) * c.clone()));
    out.push(("Z_A - Z_B", &lhs - &rhs.scale(sec)));

    if let (Some(st), Some(ct)) = (&t.sin_theta, &t.cos_theta) {
        let inner = &(&p.xa * &(&one + &p.zb)).scale(st) - &(&p.xb * &(&one - &p.za)).scale(ct);
        let lhs = inner.scale(&(n(8) * st.clone() * u.clone()));
        let rhs = &s2.scale(&(c.clone() - n(2))) + &s4.scale(sec);
        out.push(("sin X_A (1 + Z_B) - cos X_B (1 - Z_A)", &lhs - &rhs));
    }

    let anti = &(&a0 * &a1) + &(&a1 * &a0);
    let lhs = anti.scale(&(n(4) * s_sq * u.clone()));
    let rhs = &(&s2.scale(&n(-2)) + &(&a0 * &(&s2.scale(&-c.clone()) + &s4.scale(sec))))
        + &(&a1 * &(&s1.scale(c) + &s3.scale(sec)));
    out.push(("{Z_A, X_A}", &lhs - &rhs));

    let inner = &p.xb.scale(s) - &(&p.xa * &(&one - &p.zb.scale(c)));
    out.push((
        "X_B - X_A (1 - c Z_B)/s",
        &inner.scale(&(n(2) * u.clone())) - &(&a1 * &s5),
    ));
    out
}

/// `2s²(Z_A - Z_B) + c S_1 + sec μ S_3 + 2c S_5`: the first decomposition with
/// the normalization and sign originally printed. It does not vanish.
pub fn printed_first_decomposition_residual<F: Field>(t: &Tilt<F>) -> NcPoly<F> {
    let p = pauli_like(t);
    let [s1, _, s3, _, s5] = s_polys(t);
    let lhs = (&p.za - &p.zb).scale(&(F::from_i64(2) * t.s.clone() * t.s.clone()));
    &(&(&lhs + &s1.scale(&t.c)) + &s3.scale(&t.sec_mu)) + &s5.scale(&(F::from_i64(2) * t.c.clone()))
}

pub fn linear_decompositions_check() -> Vec<VerificationReport> {
    let t = Tilt::<Scalar>::symbolic();
    decomposition_residuals(&t)
        .iter()
        .map(|(name, r)| identity_report(name, r, &SAMPLE_ANGLES))
        .collect()
}

/// Operators `Σ r_k V_k` with `(Σ r_k V_k)ψ = 0` on the reference system.
#[derive(Clone, Debug)]
pub struct CandidateSpace {
    /// Kernel basis over the nine operators, exact in θ.
    pub kernel: Vec<Vec<Scalar>>,
    pub dimension: usize,
    pub r_basis_rank: usize,
    pub r_basis_in_span: bool,
    pub candidates_rank: usize,
    pub candidates_in_span: bool,
    /// A nonvanishing 4×4 minor of the image matrix, evaluated at the
    /// requested angle: the kernel dimension stays 5 there.
    pub minor_at_theta: Option<f64>,
    /// Numeric rank of the image matrix at the requested angle.
    pub rank_at_theta: Option<usize>,
}

fn stacked(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    a.iter().chain(b).cloned().collect()
}

/// Kernel of `r ↦ (r·V)ψ` computed exactly in θ, compared with the basis
/// `R_i` and with the five candidate operators. With `theta` the rank is
/// also confirmed at that angle.
pub fn candidate_space(theta: Option<f64>) -> Result<CandidateSpace> {
    let t = Tilt::<Scalar>::symbolic();
    let images = operator_images(&t).expect("symbolic context has sin θ and cos θ");
    let ker = kernel(&images);
    if ker.len() != 5 {
        return Err(Error::Rank {
            expected: 5,
            found: ker.len(),
        });
    }
    let r: Vec<Vec<Scalar>> = basis_vectors(&t).to_vec();
    let cand: Vec<Vec<Scalar>> = candidate_polys(&t)
        .iter()
        .map(|p| to_operator_vector(p).expect("candidates are degree one per party"))
        .collect();
    let r_basis_rank = rank(&r);
    let candidates_rank = rank(&cand);

    let (mut minor_at_theta, mut rank_at_theta) = (None, None);
    if let Some(theta) = theta {
        check_theta(theta)?;
        let pivots = rref(&mut images.clone());
        let minor: Vec<Vec<Scalar>> = images
            .iter()
            .map(|row| pivots.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let value = determinant(&minor).eval_at(theta)?;
        let mut m = RMat::zeros(4, 9);
        for (i, row) in images.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.eval_at(theta)?;
            }
        }
        let found = numeric_rank(&m, 1e-9);
        if value.abs() < 1e-12 || found != 4 {
            return Err(Error::Rank {
                expected: 5,
                found: 9 - found,
            });
        }
        minor_at_theta = Some(value);
        rank_at_theta = Some(found);
    }

    Ok(CandidateSpace {
        dimension: ker.len(),
        r_basis_rank,
        r_basis_in_span: rank(&stacked(&ker, &r)) == 5,
        candidates_rank,
        candidates_in_span: rank(&stacked(&ker, &cand)) == 5,
        kernel: ker,
        minor_at_theta,
        rank_at_theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Surd;

    #[test]
    fn s5_relation_holds_and_degenerates_at_quarter_pi() {
        assert!(s5_relation_check().passed);
        let t = Tilt::<Surd>::pi4();
        let [_, _, _, s4, s5] = s_polys(&t);
        let rhs = (&NcPoly::a(1) * &s4).scale(&-(&Surd::sqrt2() * &Surd::ratio(1, 2)));
        assert_eq!(s5, rhs);
    }

    #[test]
    fn decompositions_hold_and_printed_first_form_does_not() {
        let reps = linear_decompositions_check();
        assert_eq!(reps.len(), 4);
        for r in &reps {
            assert!(r.passed, "{r:?}");
        }
        let t = Tilt::<Scalar>::symbolic();
        assert!(!printed_first_decomposition_residual(&t).is_zero());
    }

    #[test]
    fn candidate_space_is_five_dimensional() {
        let cs = candidate_space(Some(std::f64::consts::FRAC_PI_8)).unwrap();
        assert_eq!(cs.dimension, 5);
        assert_eq!(cs.r_basis_rank, 5);
        assert!(cs.r_basis_in_span);
        assert_eq!(cs.candidates_rank, 5);
        assert!(cs.candidates_in_span);
        assert_eq!(cs.rank_at_theta, Some(4));
    }
}
