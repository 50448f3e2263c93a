//! Closed-form Gram matrices over the symmetry-adapted basis at θ = π/4 and
//! θ = π/8, with the symmetry-breaking parameter set to zero.

use crate::field::{Field, Radicals};

fn zeros<F: Field>(n: usize) -> Vec<Vec<F>> {
    vec![vec![F::zero(); n]; n]
}

fn scaled<F: Field>(mut m: Vec<Vec<F>>, k: &F) -> Vec<Vec<F>> {
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = x.clone() * k.clone();
        }
    }
    m
}

/// CHSH Gram matrix, `1/(2√2)` times
///
/// ```text
/// λ  0  0  0  0
/// 0  γ  q  0  0
/// 0  q  t  0  0
/// 0  0  0  μ  0
/// 0  0  0  0  q
/// ```
///
/// with `γ = 1 - λ - q` and `t = 1 - q - μ`.
pub fn chsh_gram<F: Radicals>(lambda: &F, mu: &F, q: &F) -> Vec<Vec<F>> {
    let one = F::one();
    let mut m = zeros(5);
    m[0][0] = lambda.clone();
    m[1][1] = one.clone() - lambda.clone() - q.clone();
    m[1][2] = q.clone();
    m[2][1] = q.clone();
    m[2][2] = one - q.clone() - mu.clone();
    m[3][3] = mu.clone();
    m[4][4] = q.clone();
    scaled(m, &(F::root2() * F::ratio(1, 4)))
}

/// Weight `k = √3/(8√2)` of the π/8 Gram matrix.
pub fn pi8_weight<F: Radicals>() -> F {
    F::root2() * F::root3() * F::ratio(1, 16)
}

/// π/8 Gram matrix, `k` times a 3⊕2 block matrix affine in `(β, γ, λ)`.
pub fn pi8_gram<F: Radicals>(beta: &F, gamma: &F, lambda: &F) -> Vec<Vec<F>> {
    let r = |n, d| F::ratio(n, d);
    let inv_r2 = F::root2().try_inv().expect("√2 is nonzero");
    let mut m = zeros(5);
    m[0][0] = beta.clone();
    m[0][1] = -inv_r2.clone();
    m[0][2] = r(3, 1) * gamma.clone() * inv_r2;
    m[1][1] = r(5, 3) - beta.clone() + gamma.clone() * r(1, 2);
    m[1][2] = r(1, 3) - r(2, 1) * gamma.clone();
    m[2][2] = r(2, 1) + r(3, 1) * gamma.clone() - lambda.clone();
    m[3][3] = lambda.clone();
    m[3][4] = -(F::root2() * (r(1, 3) + gamma.clone()));
    m[4][4] = r(2, 3) - gamma.clone();
    for i in 0..5 {
        for j in 0..i {
            m[i][j] = m[j][i].clone();
        }
    }
    scaled(m, &pi8_weight())
}

/// Rank-one factor rows at the two cusps: `M = k·NᵀN`.
pub fn pi8_cusp_factors<F: Radicals>() -> [([F; 3], [Vec<F>; 2]); 2] {
    let r = |n, d| F::ratio(n, d);
    let r2 = F::root2();
    let r3 = F::root3();
    let r6 = r2.clone() * r3.clone();
    let inv_r2 = r2.try_inv().expect("√2 is nonzero");
    let z = F::zero;
    [
        (
            [r(1, 2), r(-1, 3), z()],
            [
                vec![inv_r2, r(-1, 1), r(-1, 1), z(), z()],
                vec![z(), z(), z(), z(), r(-1, 1)],
            ],
        ),
        (
            [r(3, 2), r(1, 3), r(8, 3)],
            [
                vec![
                    -(r6.clone() * r(1, 2)),
                    r3.clone() * r(1, 3),
                    -(r3.clone() * r(1, 3)),
                    z(),
                    z(),
                ],
                vec![z(), z(), z(), -(r6 * r(2, 3)), r3 * r(1, 3)],
            ],
        ),
    ]
}

/// `k·NᵀN`.
pub fn gram_from_rows<F: Field>(rows: &[Vec<F>], k: &F) -> Vec<Vec<F>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut m = zeros::<F>(n);
    for row in rows {
        for i in 0..n {
            for j in 0..n {
                m[i][j] = m[i][j].clone() + row[i].clone() * row[j].clone();
            }
        }
    }
    scaled(m, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Surd;

    #[test]
    fn cusp_factors_reproduce_the_parameterized_matrix() {
        for ([b, g, l], rows) in pi8_cusp_factors::<Surd>() {
            assert_eq!(gram_from_rows(&rows, &pi8_weight()), pi8_gram(&b, &g, &l));
        }
    }
}
