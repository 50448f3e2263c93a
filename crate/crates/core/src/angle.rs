//! Angle-dependent constants of the tilted CHSH family, in a chosen field.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use crate::error::{check_theta, Result};
use crate::field::{Field, Scalar, Surd};

/// Constants derived from the state angle θ.
///
/// `cos_mu = u = 1/sqrt(1 + s²)` and `sin_mu = s·u`, so `tan μ = sin 2θ`.
/// `sin_theta`/`cos_theta` are `None` when the field cannot hold them.
#[derive(Clone, Debug)]
pub struct Tilt<F> {
    /// `None` for the symbolic context.
    pub theta: Option<f64>,
    pub c: F,
    pub s: F,
    pub cos_mu: F,
    pub sin_mu: F,
    /// `1/cos μ = sqrt(1 + s²)`.
    pub sec_mu: F,
    pub alpha: F,
    pub i_max: F,
    pub sin_theta: Option<F>,
    pub cos_theta: Option<F>,
}

impl<F: Field> Tilt<F> {
    fn assemble(theta: Option<f64>, c: F, s: F, u: F, sin_cos: Option<(F, F)>) -> Self {
        let sec_mu = u.try_inv().expect("u is nonzero");
        let sin_mu = s.clone() * u.clone();
        let alpha = F::from_i64(2) * c.clone() * u.clone();
        let i_max = F::from_i64(4) * u.clone();
        let (sin_theta, cos_theta) = match sin_cos {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        Self {
            theta,
            c,
            s,
            cos_mu: u,
            sin_mu,
            sec_mu,
            alpha,
            i_max,
            sin_theta,
            cos_theta,
        }
    }

    /// `1 + s²`.
    pub fn one_plus_s2(&self) -> F {
        F::one() + self.s.clone() * self.s.clone()
    }
}

impl Tilt<Scalar> {
    /// Every angle at once: constants are elements of `Q(st)[ct, u]`.
    pub fn symbolic() -> Self {
        Self::assemble(
            None,
            Scalar::c(),
            Scalar::s(),
            Scalar::u(),
            Some((Scalar::st(), Scalar::ct())),
        )
    }
}

impl Tilt<Surd> {
    /// θ = π/4: the maximally entangled (CHSH) point.
    pub fn pi4() -> Self {
        let half_sqrt2 = &Surd::sqrt2() * &Surd::ratio(1, 2);
        Self::assemble(
            Some(FRAC_PI_4),
            Surd::from_i64(0),
            Surd::from_i64(1),
            half_sqrt2.clone(),
            Some((half_sqrt2.clone(), half_sqrt2)),
        )
    }

    /// θ = π/8. `sin θ` is not in `Q(√2, √3)`.
    pub fn pi8() -> Self {
        let half_sqrt2 = &Surd::sqrt2() * &Surd::ratio(1, 2);
        let u = &Surd::sqrt6() * &Surd::ratio(1, 3);
        Self::assemble(Some(FRAC_PI_8), half_sqrt2.clone(), half_sqrt2, u, None)
    }
}

impl Tilt<f64> {
    pub fn numeric(theta: f64) -> Result<Self> {
        check_theta(theta)?;
        let c = (2.0 * theta).cos();
        let s = (2.0 * theta).sin();
        let u = 1.0 / (1.0 + s * s).sqrt();
        Ok(Self::assemble(
            Some(theta),
            c,
            s,
            u,
            Some((theta.sin(), theta.cos())),
        ))
    }
}

/// `α(θ) = 2/sqrt(1 + 2 tan²2θ)`, the tilt for which the reference system at θ
/// is optimal.
pub fn alpha_of_theta(theta: f64) -> f64 {
    let t = (2.0 * theta).tan();
    2.0 / (1.0 + 2.0 * t * t).sqrt()
}

/// `sqrt(8 + 2α²)`, the maximal quantum value of the tilted operator.
pub fn quantum_bound(alpha: f64) -> f64 {
    (8.0 + 2.0 * alpha * alpha).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Evaluate;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn exact_contexts_agree_with_numeric() {
        for (exact, theta) in [(Tilt::pi4(), FRAC_PI_4), (Tilt::pi8(), FRAC_PI_8)] {
            let num = Tilt::numeric(theta).unwrap();
            for (e, n) in [
                (&exact.c, num.c),
                (&exact.s, num.s),
                (&exact.cos_mu, num.cos_mu),
                (&exact.sin_mu, num.sin_mu),
                (&exact.sec_mu, num.sec_mu),
                (&exact.alpha, num.alpha),
                (&exact.i_max, num.i_max),
            ] {
                assert!(close(e.to_f64(), n), "{e} vs {n}");
            }
        }
        let sym = Tilt::symbolic();
        for theta in [0.1, 0.3, FRAC_PI_8, 0.7] {
            let num = Tilt::numeric(theta).unwrap();
            assert!(close(sym.alpha.eval_at(theta).unwrap(), num.alpha));
            assert!(close(sym.sec_mu.eval_at(theta).unwrap(), num.sec_mu));
            assert!(close(sym.sin_mu.eval_at(theta).unwrap(), num.sin_mu));
        }
    }

    #[test]
    fn tilt_formula() {
        for theta in [0.05, 0.2, FRAC_PI_8, 0.6, FRAC_PI_4] {
            let t = Tilt::numeric(theta).unwrap();
            assert!(close(t.alpha, alpha_of_theta(theta)));
            assert!(close(t.i_max, quantum_bound(t.alpha)));
        }
        assert!(Tilt::numeric(0.0).is_err());
        assert!(Tilt::numeric(1.0).is_err());
    }
}
