use std::collections::HashMap;

use super::QubitSystem;
use crate::algebra::{tilted_chsh_with, NcPoly, Word};
use crate::error::{Error, Result};
use crate::field::{Coefficient, Evaluate};
use crate::linalg::{complex, CMat, CVec};

fn word_matrix(ops: &[CMat; 2], w: Word, d: usize) -> CMat {
    w.letters()
        .fold(CMat::identity(d, d), |acc, x| acc * &ops[x as usize])
}

/// Matrix of `p` on the system, with coefficients evaluated at `sys.theta`.
pub fn represent<C: Coefficient + Evaluate>(p: &NcPoly<C>, sys: &QubitSystem) -> Result<CMat> {
    let n = sys.dim();
    let mut out = CMat::zeros(n, n);
    let mut alice_cache: HashMap<Word, CMat> = HashMap::new();
    let mut bob_cache: HashMap<Word, CMat> = HashMap::new();
    for (m, c) in p.terms() {
        let c = c.eval_at(sys.theta)?;
        let a = alice_cache
            .entry(m.alice)
            .or_insert_with(|| word_matrix(&sys.alice, m.alice, sys.d_a));
        let b = bob_cache
            .entry(m.bob)
            .or_insert_with(|| word_matrix(&sys.bob, m.bob, sys.d_b));
        out += a.kronecker(b) * complex(c, 0.0);
    }
    Ok(out)
}

/// `p·ψ`.
pub fn apply<C: Coefficient + Evaluate>(p: &NcPoly<C>, sys: &QubitSystem) -> Result<CVec> {
    Ok(represent(p, sys)? * &sys.state)
}

/// `⟨ψ|p|ψ⟩`, rejecting a non-negligible imaginary part.
pub fn expectation<C: Coefficient + Evaluate>(p: &NcPoly<C>, sys: &QubitSystem) -> Result<f64> {
    let v = sys.state.dotc(&apply(p, sys)?);
    if v.im.abs() > 1e-10 {
        return Err(Error::NonHermitian { imag: v.im });
    }
    Ok(v.re)
}

/// Deterministic local strategy `A_x = a[x]`, `B_y = b[y]` on a
/// one-dimensional system.
pub fn deterministic_system(a: [i8; 2], b: [i8; 2]) -> QubitSystem {
    let m = |s: i8| CMat::from_element(1, 1, complex(s as f64, 0.0));
    QubitSystem {
        theta: std::f64::consts::FRAC_PI_4,
        d_a: 1,
        d_b: 1,
        state: CVec::from_element(1, complex(1.0, 0.0)),
        alice: [m(a[0]), m(a[1])],
        bob: [m(b[0]), m(b[1])],
    }
}

/// Best value of the tilted operator over all 16 deterministic strategies.
pub fn classical_value(alpha: f64) -> f64 {
    let op = tilted_chsh_with(alpha);
    let signs = [-1i8, 1];
    let mut best = f64::NEG_INFINITY;
    for a0 in signs {
        for a1 in signs {
            for b0 in signs {
                for b1 in signs {
                    let sys = deterministic_system([a0, a1], [b0, b1]);
                    let v = expectation(&op, &sys).expect("real scalar system");
                    best = best.max(v);
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::field::Scalar;

    #[test]
    fn identity_and_products() {
        let sys = QubitSystem::reference(0.4).unwrap();
        let one: NcPoly<f64> = NcPoly::one();
        assert!((represent(&one, &sys).unwrap() - CMat::identity(4, 4)).norm() < 1e-15);
        let x: NcPoly<Scalar> = parse_poly("A0*B1 - c*A1").unwrap();
        let y: NcPoly<Scalar> = parse_poly("u*B0*B1 + A1*A0").unwrap();
        let lhs = represent(&(&x * &y), &sys).unwrap();
        let rhs = represent(&x, &sys).unwrap() * represent(&y, &sys).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn classical_optimum() {
        for alpha in [0.0, 0.5, 1.2, 1.9] {
            assert!((classical_value(alpha) - (2.0 + alpha)).abs() < 1e-12);
        }
    }
}
