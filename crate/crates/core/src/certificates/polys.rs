//! The polynomial families out of which certificates are built.

use crate::algebra::{operator_vector, shifted_operator, NcPoly};
use crate::angle::Tilt;
use crate::field::Field;

/// `Z_A = A0`, `X_A = A1`, `Z_B = (B0 + B1)/(2 cos μ)`, `X_B = (B0 - B1)/(2 sin μ)`.
#[derive(Clone, Debug)]
pub struct PauliLike<F> {
    pub za: NcPoly<F>,
    pub xa: NcPoly<F>,
    pub zb: NcPoly<F>,
    pub xb: NcPoly<F>,
}

pub fn pauli_like<F: Field>(t: &Tilt<F>) -> PauliLike<F> {
    let half = F::ratio(1, 2);
    let b_sum = &NcPoly::b(0) + &NcPoly::b(1);
    let b_diff = &NcPoly::b(0) - &NcPoly::b(1);
    let inv_sin_mu = t
        .sin_mu
        .try_inv()
        .expect("sin μ is nonzero for θ in (0, π/4]");
    PauliLike {
        za: NcPoly::a(0),
        xa: NcPoly::a(1),
        zb: b_sum.scale(&(t.sec_mu.clone() * half.clone())),
        xb: b_diff.scale(&(inv_sin_mu * half)),
    }
}

/// `Σ v_k V_k` over the nine operators `1, A0, A1, B0, B1, A0B0, A0B1, A1B0, A1B1`.
pub fn from_operator_vector<F: Field>(v: &[F]) -> NcPoly<F> {
    NcPoly::from_terms(operator_vector().into_iter().zip(v.iter().cloned()))
}

/// Coordinates over the nine operators, or `None` if `p` leaves their span.
pub fn to_operator_vector<F: Field>(p: &NcPoly<F>) -> Option<Vec<F>> {
    let v = operator_vector();
    let mut out = vec![F::zero(); 9];
    for (m, c) in p.terms() {
        let k = v.iter().position(|x| x == m)?;
        out[k] = c.clone();
    }
    Some(out)
}

/// Coefficient vectors of the symmetry-adapted basis. The first three are
/// invariant under `A1 ↦ -A1, B0 ↔ B1`; the last two change sign.
pub fn basis_vectors<F: Field>(t: &Tilt<F>) -> [Vec<F>; 5] {
    let z = F::zero;
    let o = F::one;
    let m2u = -(F::from_i64(2) * t.cos_mu.clone());
    let c = t.c.clone();
    let m2cu = m2u.clone() * c.clone();
    [
        vec![z(), m2u.clone(), z(), o(), o(), z(), z(), z(), z()],
        vec![m2u.clone(), z(), z(), z(), z(), o(), o(), z(), z()],
        vec![
            m2u.clone(),
            z(),
            z(),
            c.clone(),
            c.clone(),
            z(),
            z(),
            o(),
            -o(),
        ],
        vec![z(), z(), m2u, o(), -o(), z(), z(), c.clone(), c],
        vec![z(), z(), m2cu, z(), z(), o(), -o(), o(), o()],
    ]
}

/// The symmetry-adapted basis `R_1..R_5` of operators annihilating the
/// reference state.
pub fn basis_polys<F: Field>(t: &Tilt<F>) -> [NcPoly<F>; 5] {
    basis_vectors(t).map(|v| from_operator_vector(&v))
}

/// `A0(B0 - B1) + A1(B0 + B1)`.
pub fn s_prime<F: Field>() -> NcPoly<F> {
    let (sum, diff) = b_sum_diff();
    &(&NcPoly::a(0) * &diff) + &(&NcPoly::a(1) * &sum)
}

/// `A0(B0 + B1) - A1(B0 - B1)`.
pub fn s_double_prime<F: Field>() -> NcPoly<F> {
    let (sum, diff) = b_sum_diff();
    &(&NcPoly::a(0) * &sum) - &(&NcPoly::a(1) * &diff)
}

/// `A0(B0 - B1) - A1(B0 + B1)`.
pub fn s_triple_prime<F: Field>() -> NcPoly<F> {
    let (sum, diff) = b_sum_diff();
    &(&NcPoly::a(0) * &diff) - &(&NcPoly::a(1) * &sum)
}

fn b_sum_diff<F: Field>() -> (NcPoly<F>, NcPoly<F>) {
    (&NcPoly::b(0) + &NcPoly::b(1), &NcPoly::b(0) - &NcPoly::b(1))
}

/// The five polynomials `S_1..S_5` behind the two general certificates:
///
/// * `S_1` is the shifted operator,
/// * `S_2 = α A1 - S'`,
/// * `S_3 = 2A0 - I_max (B0 + B1)/2 + (α/2) S''`,
/// * `S_4 = 2A1 - I_max (B0 - B1)/2 + (α/2) S'''`,
/// * `S_5 = R_3`.
pub fn s_polys<F: Field>(t: &Tilt<F>) -> [NcPoly<F>; 5] {
    let half = F::ratio(1, 2);
    let (sum, diff) = b_sum_diff();
    let two = F::from_i64(2);
    let half_alpha = t.alpha.clone() * half.clone();
    let half_imax = t.i_max.clone() * half;
    let s1 = shifted_operator(t);
    let s2 = &NcPoly::a(1).scale(&t.alpha) - &s_prime();
    let s3 = &(&NcPoly::a(0).scale(&two) - &sum.scale(&half_imax))
        + &s_double_prime().scale(&half_alpha);
    let s4 = &(&NcPoly::a(1).scale(&two) - &diff.scale(&half_imax))
        + &s_triple_prime().scale(&half_alpha);
    let [_, _, r3, _, _] = basis_polys(t);
    [s1, s2, s3, s4, r3]
}

/// The five operators first found to span the annihilator of the reference
/// state: `Z_A - Z_B`, `1 - Z_A Z_B`, `c X_A - s Z_A X_B - X_A Z_B`,
/// `c X_B - s X_A Z_B - Z_A X_B`, `s X_A X_B - Z_A Z_B + c Z_A`.
pub fn candidate_polys<F: Field>(t: &Tilt<F>) -> [NcPoly<F>; 5] {
    let p = pauli_like(t);
    let (c, s) = (&t.c, &t.s);
    [
        &p.za - &p.zb,
        &NcPoly::one() - &(&p.za * &p.zb),
        &(&p.xa.scale(c) - &(&p.za * &p.xb).scale(s)) - &(&p.xa * &p.zb),
        &(&p.xb.scale(c) - &(&p.xa * &p.zb).scale(s)) - &(&p.za * &p.xb),
        &(&(&p.xa * &p.xb).scale(s) - &(&p.za * &p.zb)) + &p.za.scale(c),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;

    #[test]
    fn symmetry_signs_and_left_multiplication() {
        let t = Tilt::<Scalar>::symbolic();
        let r = basis_polys(&t);
        for (i, p) in r.iter().enumerate() {
            let expected = if i < 3 { p.clone() } else { -p };
            assert_eq!(p.symmetry(), expected, "R_{}", i + 1);
        }
        assert_eq!(&NcPoly::a(0) * &r[0], r[1]);
        assert_eq!(&NcPoly::a(1) * &r[3], r[2]);
    }
}
