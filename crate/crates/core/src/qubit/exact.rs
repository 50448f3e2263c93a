use crate::algebra::{operator_vector, NcPoly, Word};
use crate::angle::Tilt;
use crate::field::Field;

type Mat2<F> = [[F; 2]; 2];

fn mul2<F: Field>(x: &Mat2<F>, y: &Mat2<F>) -> Mat2<F> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            x[i][0].clone() * y[0][j].clone() + x[i][1].clone() * y[1][j].clone()
        })
    })
}

fn ident2<F: Field>() -> Mat2<F> {
    [[F::one(), F::zero()], [F::zero(), F::one()]]
}

/// The reference observables with entries in `F`: `[A0, A1]`, `[B0, B1]`.
fn reference_observables<F: Field>(t: &Tilt<F>) -> ([Mat2<F>; 2], [Mat2<F>; 2]) {
    let (o, z) = (F::one(), F::zero());
    let a0 = [[o.clone(), z.clone()], [z.clone(), -o.clone()]];
    let a1 = [[z.clone(), o.clone()], [o, z]];
    let (cm, sm) = (t.cos_mu.clone(), t.sin_mu.clone());
    let b0 = [[cm.clone(), sm.clone()], [sm.clone(), -cm.clone()]];
    let b1 = [[cm.clone(), -sm.clone()], [-sm, -cm]];
    ([a0, a1], [b0, b1])
}

fn word2<F: Field>(ops: &[Mat2<F>; 2], w: Word) -> Mat2<F> {
    w.letters()
        .fold(ident2(), |acc, x| mul2(&acc, &ops[x as usize]))
}

/// `p·ψ` for the reference system, computed exactly in `F`. `None` when the
/// field cannot hold `cos θ` and `sin θ`.
pub fn exact_apply<F: Field>(p: &NcPoly<F>, t: &Tilt<F>) -> Option<[F; 4]> {
    let psi = [
        t.cos_theta.clone()?,
        F::zero(),
        F::zero(),
        t.sin_theta.clone()?,
    ];
    let (alice, bob) = reference_observables(t);
    let mut out: [F; 4] = std::array::from_fn(|_| F::zero());
    for (m, c) in p.terms() {
        let a = word2(&alice, m.alice);
        let b = word2(&bob, m.bob);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = F::zero();
                for k in 0..2 {
                    for l in 0..2 {
                        let v = &psi[2 * k + l];
                        if v.is_zero() {
                            continue;
                        }
                        acc = acc + a[i][k].clone() * b[j][l].clone() * v.clone();
                    }
                }
                out[2 * i + j] = out[2 * i + j].clone() + c.clone() * acc;
            }
        }
    }
    Some(out)
}

/// The 4×9 matrix whose column `k` is `V_k·ψ` for the nine operators of
/// [`operator_vector`]. Its kernel is the set of `r` with `(r·V)ψ = 0`.
pub fn operator_images<F: Field>(t: &Tilt<F>) -> Option<Vec<Vec<F>>> {
    let cols: Vec<[F; 4]> = operator_vector()
        .iter()
        .map(|m| exact_apply(&NcPoly::monomial(*m), t))
        .collect::<Option<_>>()?;
    Some(
        (0..4)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::shifted_operator;
    use crate::field::Scalar;
    use num_traits::Zero;

    #[test]
    fn reference_state_is_annihilated_by_shifted_operator() {
        // (I_max - I_α)ψ = 0 identically in θ.
        let t = Tilt::<Scalar>::symbolic();
        let v = exact_apply(&shifted_operator(&t), &t).unwrap();
        assert!(v.iter().all(Zero::is_zero), "{v:?}");
    }
}
