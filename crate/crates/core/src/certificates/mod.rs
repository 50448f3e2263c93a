//! Sum-of-squares certificates for the shifted operator and their exact
//! verification.

mod audit;
mod file;
mod gram;
mod identities;
mod library;
mod polys;

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use serde::Serialize;

use crate::algebra::NcPoly;
use crate::field::{Evaluate, Field};
use crate::linalg::{sym_eigen, RMat};

pub use audit::{audit_yn, q_vectors, radicand, AuditReport};
pub use file::{certificate_from_json, certificate_to_json};
pub use gram::{chsh_gram, gram_from_rows, pi8_cusp_factors, pi8_gram, pi8_weight};
pub use identities::{
    candidate_space, decomposition_residuals, linear_decompositions_check,
    printed_first_decomposition_residual, s5_relation_check, s5_relation_residual, CandidateSpace,
};
pub use library::{library, library_entry, library_names, verify_library, AnyCertificate};
pub use polys::{
    basis_polys, basis_vectors, candidate_polys, from_operator_vector, pauli_like, s_double_prime,
    s_polys, s_prime, s_triple_prime, to_operator_vector, PauliLike,
};

/// Angles at which symbolic certificates are checked for positivity.
pub const SAMPLE_ANGLES: [f64; 6] = [0.05, 0.2, FRAC_PI_8, 0.5, 0.7, FRAC_PI_4];

/// Eigenvalues of a Gram matrix may dip this far below zero.
pub const PSD_TOL: f64 = 1e-10;

/// Residual coefficients up to this size count as zero in numeric mode.
pub const NUMERIC_RESIDUAL_TOL: f64 = 1e-9;

/// How the quadratic form is given.
#[derive(Clone, Debug, PartialEq)]
pub enum Form<F> {
    /// `Σ_ij M_ij R_i† R_j`.
    Gram {
        basis: Vec<NcPoly<F>>,
        gram: Vec<Vec<F>>,
    },
    /// `Σ_i w_i P_i† P_i`.
    Squares(Vec<(F, NcPoly<F>)>),
}

/// A claimed identity `form = target`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<F> {
    pub name: String,
    /// `None` when the coefficients are exact functions of θ.
    pub theta: Option<f64>,
    pub form: Form<F>,
    pub target: NcPoly<F>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub exact: bool,
    /// Printed residual polynomial, `"0"` when it vanishes.
    pub residual: String,
    pub residual_terms: usize,
    /// Largest residual coefficient at the sample angles.
    pub residual_max_abs: f64,
    /// Smallest Gram eigenvalue (or square weight) over the sample angles.
    pub min_eigenvalue: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl<F: Field + Evaluate> Certificate<F> {
    pub fn gram(
        name: &str,
        theta: Option<f64>,
        basis: Vec<NcPoly<F>>,
        gram: Vec<Vec<F>>,
        target: NcPoly<F>,
    ) -> Self {
        Self {
            name: name.into(),
            theta,
            form: Form::Gram { basis, gram },
            target,
        }
    }

    pub fn squares(
        name: &str,
        theta: Option<f64>,
        terms: Vec<(F, NcPoly<F>)>,
        target: NcPoly<F>,
    ) -> Self {
        Self {
            name: name.into(),
            theta,
            form: Form::Squares(terms),
            target,
        }
    }

    /// The quadratic form as a polynomial.
    pub fn expand(&self) -> NcPoly<F> {
        match &self.form {
            Form::Gram { basis, gram } => {
                let mut out = NcPoly::zero();
                for (i, ri) in basis.iter().enumerate() {
                    let ri_adj = ri.adjoint();
                    for (j, rj) in basis.iter().enumerate() {
                        let m = &gram[i][j];
                        if !m.is_zero() {
                            out = &out + &(&ri_adj * rj).scale(m);
                        }
                    }
                }
                out
            }
            Form::Squares(terms) => terms.iter().fold(NcPoly::zero(), |acc, (w, p)| {
                &acc + &p.hermitian_square().scale(w)
            }),
        }
    }

    pub fn residual(&self) -> NcPoly<F> {
        &self.expand() - &self.target
    }

    /// Same certificate written as a Gram matrix (squares become a diagonal).
    pub fn to_gram(&self) -> (Vec<NcPoly<F>>, Vec<Vec<F>>) {
        match &self.form {
            Form::Gram { basis, gram } => (basis.clone(), gram.clone()),
            Form::Squares(terms) => {
                let n = terms.len();
                let mut gram = vec![vec![F::zero(); n]; n];
                for (k, (w, _)) in terms.iter().enumerate() {
                    gram[k][k] = w.clone();
                }
                (terms.iter().map(|(_, p)| p.clone()).collect(), gram)
            }
        }
    }

    /// Image under `A1 ↦ -A1, B0 ↔ B1`.
    pub fn symmetry_image(&self) -> Self {
        let form = match &self.form {
            Form::Gram { basis, gram } => Form::Gram {
                basis: basis.iter().map(NcPoly::symmetry).collect(),
                gram: gram.clone(),
            },
            Form::Squares(terms) => Form::Squares(
                terms
                    .iter()
                    .map(|(w, p)| (w.clone(), p.symmetry()))
                    .collect(),
            ),
        };
        Self {
            name: format!("{}'", self.name),
            theta: self.theta,
            form,
            target: self.target.symmetry(),
        }
    }

    pub fn sample_angles(&self) -> Vec<f64> {
        match self.theta {
            Some(t) => vec![t],
            None => SAMPLE_ANGLES.to_vec(),
        }
    }

    /// Smallest eigenvalue of the Gram matrix evaluated at `theta`.
    pub fn min_eigenvalue_at(&self, theta: f64) -> crate::Result<f64> {
        match &self.form {
            Form::Gram { gram, .. } => {
                let n = gram.len();
                let mut m = RMat::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] = gram[i][j].eval_at(theta)?;
                    }
                }
                Ok(sym_eigen(&m).values.first().copied().unwrap_or(0.0))
            }
            Form::Squares(terms) => terms
                .iter()
                .map(|(w, _)| w.eval_at(theta))
                .try_fold(f64::INFINITY, |acc, w| Ok(acc.min(w?))),
        }
    }

    /// Expand the form and compare with the target. Exact fields require the
    /// residual to vanish identically; the Gram matrix must also be PSD at the
    /// sample angles.
    pub fn verify(&self) -> VerificationReport {
        let residual = self.residual();
        let angles = self.sample_angles();
        let mut note = None;
        let mut residual_max_abs = 0.0f64;
        let mut min_eig = f64::INFINITY;
        let mut significant_terms = 0;
        for &theta in &angles {
            match residual.eval_at(theta) {
                Ok(r) => {
                    residual_max_abs = residual_max_abs.max(r.max_abs_coeff());
                    significant_terms = significant_terms.max(r.chop(NUMERIC_RESIDUAL_TOL).len());
                }
                Err(e) => note = Some(e.to_string()),
            }
            match self.min_eigenvalue_at(theta) {
                Ok(v) => min_eig = min_eig.min(v),
                Err(e) => note = Some(e.to_string()),
            }
        }
        let residual_ok = if F::EXACT {
            residual.is_zero()
        } else {
            residual_max_abs <= NUMERIC_RESIDUAL_TOL
        };
        let psd_ok = min_eig >= -PSD_TOL;
        let printed = if F::EXACT || residual_max_abs > NUMERIC_RESIDUAL_TOL {
            residual.to_string()
        } else {
            "0".into()
        };
        VerificationReport {
            name: self.name.clone(),
            exact: F::EXACT,
            residual: printed,
            residual_terms: if F::EXACT {
                residual.len()
            } else {
                significant_terms
            },
            residual_max_abs,
            min_eigenvalue: Some(min_eig),
            passed: residual_ok && psd_ok && note.is_none(),
            note,
        }
    }

    /// Evaluate the coefficients at the certificate's angle (or `theta` for a
    /// symbolic certificate).
    pub fn to_numeric(&self, theta: f64) -> crate::Result<Certificate<f64>> {
        let theta = self.theta.unwrap_or(theta);
        let form = match &self.form {
            Form::Gram { basis, gram } => Form::Gram {
                basis: basis
                    .iter()
                    .map(|p| p.eval_at(theta))
                    .collect::<crate::Result<_>>()?,
                gram: gram
                    .iter()
                    .map(|row| row.iter().map(|x| x.eval_at(theta)).collect())
                    .collect::<crate::Result<_>>()?,
            },
            Form::Squares(terms) => Form::Squares(
                terms
                    .iter()
                    .map(|(w, p)| Ok((w.eval_at(theta)?, p.eval_at(theta)?)))
                    .collect::<crate::Result<_>>()?,
            ),
        };
        Ok(Certificate {
            name: self.name.clone(),
            theta: Some(theta),
            form,
            target: self.target.eval_at(theta)?,
        })
    }
}

/// Report for an identity `lhs - rhs = residual` checked exactly.
pub(crate) fn identity_report<F: Field + Evaluate>(
    name: &str,
    residual: &NcPoly<F>,
    angles: &[f64],
) -> VerificationReport {
    let mut note = None;
    let mut max_abs = 0.0f64;
    for &theta in angles {
        match residual.eval_at(theta) {
            Ok(r) => max_abs = max_abs.max(r.max_abs_coeff()),
            Err(e) => note = Some(e.to_string()),
        }
    }
    let ok = if F::EXACT {
        residual.is_zero()
    } else {
        max_abs <= NUMERIC_RESIDUAL_TOL
    };
    VerificationReport {
        name: name.into(),
        exact: F::EXACT,
        residual: residual.to_string(),
        residual_terms: residual.len(),
        residual_max_abs: max_abs,
        min_eigenvalue: None,
        passed: ok && note.is_none(),
        note,
    }
}
