//! Named certificates, exact in θ or at θ = π/4, π/8.

use rayon::prelude::*;

use super::{
    basis_polys, chsh_gram, gram_from_rows, pauli_like, pi8_cusp_factors, pi8_weight, s_polys,
    Certificate, VerificationReport,
};
use crate::algebra::{shifted_operator, NcPoly};
use crate::angle::Tilt;
use crate::field::{Field, Scalar, Surd};

/// A certificate over whichever field it is exact in.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCertificate {
    Symbolic(Certificate<Scalar>),
    Exact(Certificate<Surd>),
    Numeric(Certificate<f64>),
}

macro_rules! each {
    ($self:expr, $c:ident => $body:expr) => {
        match $self {
            AnyCertificate::Symbolic($c) => $body,
            AnyCertificate::Exact($c) => $body,
            AnyCertificate::Numeric($c) => $body,
        }
    };
}

impl AnyCertificate {
    pub fn name(&self) -> &str {
        each!(self, c => &c.name)
    }

    pub fn theta(&self) -> Option<f64> {
        each!(self, c => c.theta)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, AnyCertificate::Numeric(_))
    }

    pub fn verify(&self) -> VerificationReport {
        each!(self, c => c.verify())
    }

    pub fn symmetry_image(&self) -> Self {
        match self {
            AnyCertificate::Symbolic(c) => AnyCertificate::Symbolic(c.symmetry_image()),
            AnyCertificate::Exact(c) => AnyCertificate::Exact(c.symmetry_image()),
            AnyCertificate::Numeric(c) => AnyCertificate::Numeric(c.symmetry_image()),
        }
    }

    /// Coefficients evaluated at the certificate's own angle, or at `theta`
    /// when it holds for every angle.
    pub fn to_numeric(&self, theta: f64) -> crate::Result<Certificate<f64>> {
        each!(self, c => c.to_numeric(theta))
    }
}

fn sos1_sos2() -> [Certificate<Scalar>; 2] {
    let t = Tilt::<Scalar>::symbolic();
    let [s1, s2, s3, s4, _] = s_polys(&t);
    let w = (Scalar::from_i64(2) * t.i_max.clone())
        .try_inv()
        .expect("I_max is nonzero");
    let target = shifted_operator(&t);
    [
        Certificate::squares(
            "sos1",
            None,
            vec![(w.clone(), s1), (w.clone(), s2)],
            target.clone(),
        ),
        Certificate::squares("sos2", None, vec![(w.clone(), s3), (w, s4)], target),
    ]
}

fn chsh_certificates() -> Vec<Certificate<Surd>> {
    let t = Tilt::<Surd>::pi4();
    let theta = t.theta;
    let target = shifted_operator(&t);
    let p = pauli_like(&t);
    let r = |n, d| Surd::ratio(n, d);
    let r2 = Surd::sqrt2();
    let mixed = &(&p.za * &p.xb) + &(&p.xa * &p.zb);

    let mut out = vec![
        Certificate::squares(
            "chshsos1",
            theta,
            vec![
                (&r2 * &r(1, 8), target.clone()),
                (&r2 * &r(1, 4), mixed.clone()),
            ],
            target.clone(),
        ),
        Certificate::squares(
            "chshsos2",
            theta,
            vec![
                (&r2 * &r(1, 2), &p.zb - &p.za),
                (&r2 * &r(1, 2), &p.xb - &p.xa),
            ],
            target.clone(),
        ),
    ];

    let basis = basis_polys(&t).to_vec();
    for (k, (l, m, q)) in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]
        .into_iter()
        .map(|(l, m, q)| (r(l, 1), r(m, 1), r(q, 1)))
        .chain([(r(0, 1), r(0, 1), r(1, 2))])
        .enumerate()
    {
        out.push(Certificate::gram(
            &format!("C{}", k + 1),
            theta,
            basis.clone(),
            chsh_gram(&l, &m, &q),
            target.clone(),
        ));
    }

    let k = &r2 * &r(1, 16);
    let three = NcPoly::constant(r(3, 1));
    let tail = |zz: &NcPoly<Surd>, xx: &NcPoly<Surd>| &(&three - &zz.scale(&r(2, 1))) - xx;
    let zz = &p.za * &p.zb;
    let xx = &p.xa * &p.xb;
    out.push(Certificate::squares(
        "appB1",
        theta,
        vec![
            (&k * &r(2, 1), &p.za - &p.zb),
            (&k * &r(5, 1), &p.xa - &p.xb),
            (&k * &r(2, 1), mixed.clone()),
            (k.clone(), tail(&zz, &xx)),
        ],
        target.clone(),
    ));
    out.push(Certificate::squares(
        "appB2",
        theta,
        vec![
            (&k * &r(2, 1), &p.xa - &p.xb),
            (&k * &r(5, 1), &p.za - &p.zb),
            (&k * &r(2, 1), mixed),
            (k, tail(&xx, &zz)),
        ],
        target,
    ));
    out
}

fn pi8_certificates() -> Vec<Certificate<Surd>> {
    let t = Tilt::<Surd>::pi8();
    let basis = basis_polys(&t).to_vec();
    let target = shifted_operator(&t);
    let k = pi8_weight::<Surd>();
    pi8_cusp_factors::<Surd>()
        .into_iter()
        .enumerate()
        .map(|(i, (_, rows))| {
            Certificate::gram(
                &format!("N{}", i + 1),
                t.theta,
                basis.clone(),
                gram_from_rows(&rows, &k),
                target.clone(),
            )
        })
        .collect()
}

pub fn library_names() -> Vec<&'static str> {
    vec![
        "sos1", "sos2", "chshsos1", "chshsos2", "C1", "C2", "C3", "C4", "C5", "appB1", "appB2",
        "N1", "N2",
    ]
}

/// Every certificate: the two general ones, the CHSH family and the π/8 cusps.
pub fn library() -> Vec<AnyCertificate> {
    let mut out: Vec<AnyCertificate> = sos1_sos2()
        .into_iter()
        .map(AnyCertificate::Symbolic)
        .collect();
    out.extend(chsh_certificates().into_iter().map(AnyCertificate::Exact));
    out.extend(pi8_certificates().into_iter().map(AnyCertificate::Exact));
    out
}

pub fn library_entry(name: &str) -> Option<AnyCertificate> {
    library().into_iter().find(|c| c.name() == name)
}

/// Verify every library certificate in parallel, in library order.
pub fn verify_library() -> Vec<VerificationReport> {
    library().par_iter().map(AnyCertificate::verify).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{basis_vectors, to_operator_vector, Form};
    use crate::linalg::solve;

    /// Gram matrix of a sum of squares re-expressed over the basis `R_i`.
    fn gram_over_r(c: &Certificate<Surd>, t: &Tilt<Surd>) -> Vec<Vec<Surd>> {
        let Form::Squares(terms) = &c.form else {
            panic!("expected squares")
        };
        let r = basis_vectors(t);
        let rt: Vec<Vec<Surd>> = (0..9)
            .map(|i| r.iter().map(|v| v[i].clone()).collect())
            .collect();
        let mut m = vec![vec![Surd::from_i64(0); 5]; 5];
        for (w, p) in terms {
            let v = to_operator_vector(p).expect("degree one in each party");
            let x = solve(&rt, &v).expect("lies in the span of R");
            for i in 0..5 {
                for j in 0..5 {
                    m[i][j] = &m[i][j] + &(&(w * &x[i]) * &x[j]);
                }
            }
        }
        m
    }

    #[test]
    fn every_entry_verifies() {
        for (c, rep) in library().iter().zip(verify_library()) {
            assert!(rep.passed, "{}: {:?}", c.name(), rep);
            assert_eq!(rep.residual, "0");
        }
        let names: Vec<_> = library().iter().map(|c| c.name().to_string()).collect();
        assert_eq!(names, library_names());
    }

    #[test]
    fn squares_match_vertices_and_interior_points() {
        let t = Tilt::<Surd>::pi4();
        let r = |n, d| Surd::ratio(n, d);
        let exact = |name| match library_entry(name) {
            Some(AnyCertificate::Exact(c)) => c,
            _ => panic!("{name}"),
        };
        for (name, (l, m, q)) in [
            ("chshsos1", (r(0, 1), r(0, 1), r(1, 2))),
            ("chshsos2", (r(1, 1), r(1, 1), r(0, 1))),
            ("appB1", (r(1, 4), r(5, 8), r(1, 4))),
            ("appB2", (r(5, 8), r(1, 4), r(1, 4))),
        ] {
            assert_eq!(
                gram_over_r(&exact(name), &t),
                chsh_gram(&l, &m, &q),
                "{name}"
            );
        }
    }

    #[test]
    fn corrupted_sos1_leaves_correlator_terms() {
        let t = Tilt::<Scalar>::symbolic();
        let [s1, _, _, _, _] = s_polys(&t);
        let bad_s2 = &NcPoly::a(1).scale(&t.alpha) + &super::super::s_prime();
        let w = (Scalar::from_i64(2) * t.i_max.clone()).try_inv().unwrap();
        let c = Certificate::squares(
            "bad",
            None,
            vec![(w.clone(), s1), (w, bad_s2)],
            shifted_operator(&t),
        );
        let rep = c.verify();
        assert!(!rep.passed);
        let res = c.residual();
        assert!(!res.is_zero());
        assert!(res
            .terms()
            .any(|(m, _)| m.alice.count(0) > 0 && m.bob.count(0) > 0));
    }

    #[test]
    fn symmetry_images_still_verify() {
        for c in library() {
            let rep = c.symmetry_image().verify();
            assert!(rep.passed, "{}", c.name());
        }
    }
}
