use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Monomial;
use crate::error::Result;
use crate::field::{Coefficient, Evaluate, Field};

/// Finite linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct NcPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Default for NcPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> NcPoly<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term(Monomial::IDENTITY, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::IDENTITY, c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, C::one())
    }

    /// Alice's observable `A_x`.
    pub fn a(x: u8) -> Self {
        Self::monomial(Monomial::a(x))
    }

    /// Bob's observable `B_y`.
    pub fn b(y: u8) -> Self {
        Self::monomial(Monomial::b(y))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the identity when the polynomial is a pure scalar.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::IDENTITY).cloned(),
            _ => None,
        }
    }

    pub fn max_word_len(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.alice.len().max(m.bob.len()))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.clone() * k.clone())))
    }

    /// Reverse every word. Coefficients are real, so they are unchanged.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.adjoint(), c.clone())))
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    /// Image under `A1 ↦ -A1, B0 ↔ B1`.
    pub fn symmetry(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let (neg, img) = m.symmetry();
            (img, if neg { -c.clone() } else { c.clone() })
        }))
    }

    /// `self† · self`.
    pub fn hermitian_square(&self) -> Self {
        &self.adjoint() * self
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> NcPoly<D> {
        NcPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn try_map_coeffs<D: Coefficient, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<NcPoly<D>, E> {
        let mut out = NcPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }
}

impl<C: Coefficient + Evaluate> NcPoly<C> {
    /// Floating-point image at angle θ.
    pub fn eval_at(&self, theta: f64) -> Result<NcPoly<f64>> {
        self.try_map_coeffs(|c| c.eval_at(theta))
    }
}

impl NcPoly<f64> {
    /// Drop coefficients with magnitude at most `tol`.
    pub fn chop(&self, tol: f64) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(_, c)| c.abs() > tol)
                .map(|(m, c)| (*m, *c)),
        )
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max)
    }
}

impl<C: Coefficient> Add for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn add(self, rhs: &NcPoly<C>) -> NcPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn sub(self, rhs: &NcPoly<C>) -> NcPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<C: Coefficient> Mul for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn mul(self, rhs: &NcPoly<C>) -> NcPoly<C> {
        let mut out = NcPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Neg for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn neg(self) -> NcPoly<C> {
        NcPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for NcPoly<C> {
            type Output = NcPoly<C>;
            fn $m(self, rhs: NcPoly<C>) -> NcPoly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coefficient> $tr<&NcPoly<C>> for NcPoly<C> {
            type Output = NcPoly<C>;
            fn $m(self, rhs: &NcPoly<C>) -> NcPoly<C> {
                (&self).$m(rhs)
            }
        }
        impl<C: Coefficient> $tr<NcPoly<C>> for &NcPoly<C> {
            type Output = NcPoly<C>;
            fn $m(self, rhs: NcPoly<C>) -> NcPoly<C> {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> Neg for NcPoly<C> {
    type Output = NcPoly<C>;
    fn neg(self) -> NcPoly<C> {
        -&self
    }
}

impl<C: Coefficient> Zero for NcPoly<C> {
    fn zero() -> Self {
        NcPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for NcPoly<C> {
    fn one() -> Self {
        NcPoly::one()
    }
}

impl<F: Field> fmt::Display for NcPoly<F> {
    /// Canonical text: `A0 - (2*u)*A0*B1 + (1/2)`. Coefficients of one are
    /// printed as a bare sign. The parser reads this form back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = if c.is_one() {
                (false, m.to_string())
            } else if (-c.clone()).is_one() {
                (true, m.to_string())
            } else if m.is_identity() {
                (false, format!("({})", c.to_expr()))
            } else {
                (false, format!("({})*{m}", c.to_expr()))
            };
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;

    type P = NcPoly<Scalar>;

    #[test]
    fn dichotomic_and_commuting() {
        assert_eq!(&P::a(0) * &P::a(0), P::one());
        assert_eq!(&P::a(0) * &P::b(0), &P::b(0) * &P::a(0));
        let a01 = &P::a(0) * &P::a(1);
        let a10 = &P::a(1) * &P::a(0);
        assert_eq!(&a01 * &a10, P::one());
    }

    #[test]
    fn adjoint_reverses_bob_word() {
        let c = Scalar::c();
        let p = (&(&P::a(0) * &P::b(0)) * &P::b(1)).scale(&c);
        let q = (&(&P::a(0) * &P::b(1)) * &P::b(0)).scale(&c);
        assert_eq!(p.adjoint(), q);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &P::a(0) - &P::a(0);
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn printer() {
        let p = &(&P::one() - &P::a(1))
            + &(&P::a(0) * &P::b(1)).scale(&(&Scalar::u() * &Scalar::from_i64(-2)));
        assert_eq!(p.to_string(), "1 - A1 + (-2*u)*A0*B1");
    }
}
