use crate::algebra::{
    basis_expand, operator_vector, product_basis, shifted_operator, Monomial, NcPoly,
};
use crate::angle::Tilt;
use crate::certificates::basis_polys;
use crate::error::{check_theta, Result};
use crate::field::{Coefficient, Evaluate, Scalar};
use crate::linalg::RMat;

/// Which polynomial basis the Gram matrix is written over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// The five symmetry-adapted operators annihilating the reference state.
    Annihilators,
    /// The nine operators `1, A_x, B_y, A_x B_y`.
    Canonical,
}

impl BasisKind {
    pub fn size(self) -> usize {
        match self {
            BasisKind::Annihilators => 5,
            BasisKind::Canonical => 9,
        }
    }
}

/// `tr(M F^i) = s^i` for the 25 product-basis monomials, plus optional
/// extra linear constraints `tr(M P) = v`.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub basis_size: usize,
    pub monomials: Vec<Monomial>,
    pub f: Vec<RMat>,
    pub s: Vec<f64>,
    pub extra: Vec<(RMat, f64)>,
}

pub fn canonical_basis<C: Coefficient>() -> Vec<NcPoly<C>> {
    operator_vector()
        .into_iter()
        .map(NcPoly::monomial)
        .collect()
}

/// Expand `R_μ† R_ν` exactly, then evaluate the coefficients at θ.
pub fn build_constraints<C: Coefficient + Evaluate>(
    theta: f64,
    basis: &[NcPoly<C>],
    target: &NcPoly<C>,
) -> Result<ConstraintSystem> {
    let n = basis.len();
    let mut f = vec![RMat::zeros(n, n); 25];
    for (mu, r_mu) in basis.iter().enumerate() {
        let adj = r_mu.adjoint();
        for (nu, r_nu) in basis.iter().enumerate() {
            let coords = basis_expand(&(&adj * r_nu))?;
            for (i, c) in coords.iter().enumerate() {
                let v = c.eval_at(theta)?;
                f[i][(mu, nu)] += 0.5 * v;
                f[i][(nu, mu)] += 0.5 * v;
            }
        }
    }
    let s = basis_expand(target)?
        .iter()
        .map(|c| c.eval_at(theta))
        .collect::<Result<_>>()?;
    Ok(ConstraintSystem {
        basis_size: n,
        monomials: product_basis().to_vec(),
        f,
        s,
        extra: Vec::new(),
    })
}

impl ConstraintSystem {
    /// Constraints for the shifted operator at θ over the chosen basis.
    pub fn for_theta(theta: f64, kind: BasisKind) -> Result<Self> {
        check_theta(theta)?;
        let t = Tilt::<Scalar>::symbolic();
        let target = shifted_operator(&t);
        match kind {
            BasisKind::Annihilators => build_constraints(theta, &basis_polys(&t), &target),
            BasisKind::Canonical => build_constraints(theta, &canonical_basis::<Scalar>(), &target),
        }
    }

    /// Add the constraint `M_ij = value`.
    pub fn pin(mut self, i: usize, j: usize, value: f64) -> Self {
        let n = self.basis_size;
        let mut p = RMat::zeros(n, n);
        if i == j {
            p[(i, i)] = 1.0;
        } else {
            p[(i, j)] = 0.5;
            p[(j, i)] = 0.5;
        }
        self.extra.push((p, value));
        self
    }

    /// Same constraints with the target negated.
    pub fn negated(mut self) -> Self {
        for x in self.s.iter_mut() {
            *x = -*x;
        }
        for (_, v) in self.extra.iter_mut() {
            *v = -*v;
        }
        self
    }

    /// All constraint matrices and right-hand sides, extras last.
    pub fn rows(&self) -> impl Iterator<Item = (&RMat, f64)> {
        self.f
            .iter()
            .zip(self.s.iter().copied())
            .chain(self.extra.iter().map(|(p, v)| (p, *v)))
    }

    /// Largest `|tr(M F^i) - s^i|` over all constraints.
    pub fn residual(&self, m: &RMat) -> f64 {
        self.rows()
            .map(|(f, s)| (m.component_mul(f).sum() - s).abs())
            .fold(0.0, f64::max)
    }

    /// `Σ M_μν R_μ† R_ν` in product-basis coordinates.
    pub fn expand(&self, m: &RMat) -> Vec<f64> {
        self.f.iter().map(|f| m.component_mul(f).sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::chsh_gram;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn canonical_target_at_quarter_pi() {
        let cs = ConstraintSystem::for_theta(FRAC_PI_4, BasisKind::Canonical).unwrap();
        let idx = |m: Monomial| cs.monomials.iter().position(|x| *x == m).unwrap();
        assert!((cs.s[idx(Monomial::IDENTITY)] - 2.0 * SQRT_2).abs() < 1e-12);
        for (x, y, sign) in [(0, 0, -1.0), (0, 1, -1.0), (1, 0, -1.0), (1, 1, 1.0)] {
            assert!((cs.s[idx(Monomial::ab(x, y))] - sign).abs() < 1e-12);
        }
        for m in &cs.monomials {
            if m.bob.is_empty() && m.alice.len() == 2 {
                assert_eq!(cs.s[idx(*m)], 0.0);
            }
        }
    }

    #[test]
    fn vertex_matrix_meets_the_identity_constraint() {
        let cs = ConstraintSystem::for_theta(FRAC_PI_4, BasisKind::Annihilators).unwrap();
        let g = chsh_gram::<f64>(&1.0, &1.0, &0.0);
        let m = RMat::from_fn(5, 5, |i, j| g[i][j]);
        let k = cs.monomials.iter().position(|x| x.is_identity()).unwrap();
        assert!((m.component_mul(&cs.f[k]).sum() - 2.0 * SQRT_2).abs() < 1e-12);
        assert!(cs.residual(&m) < 1e-12);
    }
}
