use std::sync::OnceLock;

use super::{Monomial, NcPoly, Word};
use crate::angle::Tilt;
use crate::error::{Error, Result};
use crate::field::{Coefficient, Field};

/// The nine operators `1, A0, A1, B0, B1, A0B0, A0B1, A1B0, A1B1`.
pub fn operator_vector() -> [Monomial; 9] {
    [
        Monomial::IDENTITY,
        Monomial::a(0),
        Monomial::a(1),
        Monomial::b(0),
        Monomial::b(1),
        Monomial::ab(0, 0),
        Monomial::ab(0, 1),
        Monomial::ab(1, 0),
        Monomial::ab(1, 1),
    ]
}

/// All products of two elements of [`operator_vector`]: the nine operators
/// themselves, followed by the remaining sixteen monomials in canonical order.
pub fn product_basis() -> &'static [Monomial; 25] {
    static BASIS: OnceLock<[Monomial; 25]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let v = operator_vector();
        let words = [
            Word::EMPTY,
            Word::letter(0),
            Word::letter(1),
            Word::alternating(0, 2),
            Word::alternating(1, 2),
        ];
        let mut rest: Vec<Monomial> = words
            .iter()
            .flat_map(|&a| words.iter().map(move |&b| Monomial::new(a, b)))
            .filter(|m| !v.contains(m))
            .collect();
        rest.sort();
        let mut out = [Monomial::IDENTITY; 25];
        out[..9].copy_from_slice(&v);
        out[9..].copy_from_slice(&rest);
        out
    })
}

/// Position of `m` in [`product_basis`].
pub fn product_index(m: &Monomial) -> Option<usize> {
    product_basis().iter().position(|b| b == m)
}

/// Coordinates of `p` in [`product_basis`].
pub fn basis_expand<C: Coefficient>(p: &NcPoly<C>) -> Result<Vec<C>> {
    let mut out = vec![C::zero(); 25];
    for (m, c) in p.terms() {
        let i = product_index(m).ok_or(Error::OutOfBasis(*m))?;
        out[i] = c.clone();
    }
    Ok(out)
}

/// `Σ coords[i]·E_i`, the inverse of [`basis_expand`].
pub fn basis_collect<C: Coefficient>(coords: &[C]) -> NcPoly<C> {
    NcPoly::from_terms(
        product_basis()
            .iter()
            .zip(coords)
            .map(|(m, c)| (*m, c.clone())),
    )
}

/// `α·A0 + A0B0 + A0B1 + A1B0 - A1B1` for an explicit tilt `α`.
pub fn tilted_chsh_with<C: Coefficient>(alpha: C) -> NcPoly<C> {
    let one = C::one();
    NcPoly::from_terms([
        (Monomial::a(0), alpha),
        (Monomial::ab(0, 0), one.clone()),
        (Monomial::ab(0, 1), one.clone()),
        (Monomial::ab(1, 0), one.clone()),
        (Monomial::ab(1, 1), -one),
    ])
}

/// The tilted CHSH operator with `α = 2c·u`.
pub fn tilted_chsh<F: Field>(t: &Tilt<F>) -> NcPoly<F> {
    tilted_chsh_with(t.alpha.clone())
}

/// `I_max·1 - I_α`, positive semidefinite on every quantum system.
pub fn shifted_operator<F: Field>(t: &Tilt<F>) -> NcPoly<F> {
    &NcPoly::constant(t.i_max.clone()) - &tilted_chsh(t)
}

/// Whether every monomial of `p` lies in the span of [`operator_vector`].
pub fn in_operator_span<C: Coefficient>(p: &NcPoly<C>) -> bool {
    p.terms()
        .all(|(m, _)| m.alice.len() <= 1 && m.bob.len() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Scalar, Surd};
    use num_traits::Zero;

    #[test]
    fn product_basis_is_closed() {
        let v = operator_vector();
        let b = product_basis();
        for x in &v {
            for y in &v {
                assert!(b.contains(&x.adjoint().mul(*y)));
            }
        }
        let mut sorted = b.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 25);
    }

    #[test]
    fn chsh_expansion_pattern() {
        let chsh = shifted_operator(&Tilt::pi4());
        let coords = basis_expand(&chsh).unwrap();
        let r = Surd::sqrt2() * Surd::from_i64(2);
        let expected = [
            r.clone(),
            Surd::zero(),
            Surd::zero(),
            Surd::zero(),
            Surd::zero(),
        ]
        .into_iter()
        .chain([-1, -1, -1, 1].map(Surd::from_i64))
        .chain(std::iter::repeat(Surd::zero()).take(16))
        .collect::<Vec<_>>();
        assert_eq!(coords, expected);
    }

    #[test]
    fn out_of_basis_rejected() {
        let p = NcPoly::<Scalar>::from_terms([(
            Monomial::new(Word::alternating(0, 3), Word::EMPTY),
            Scalar::from_i64(1),
        )]);
        assert!(matches!(basis_expand(&p), Err(Error::OutOfBasis(_))));
    }

    #[test]
    fn operator_is_self_adjoint_and_symmetric() {
        let t = Tilt::symbolic();
        let i = tilted_chsh(&t);
        assert!(i.is_self_adjoint());
        assert_eq!(i.symmetry(), i);
        assert_eq!(i.coefficient(&Monomial::ab(1, 1)), -Scalar::from_i64(1));
    }
}
