use thiserror::Error;

use crate::algebra::Monomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator vanishes at theta = {theta}")]
    Pole { theta: f64 },

    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeOverflow { degree: usize, cap: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("monomial {0} lies outside the 25-element product basis")]
    OutOfBasis(Monomial),

    #[error("expected kernel dimension {expected}, found {found}")]
    Rank { expected: usize, found: usize },

    #[error(
        "no PSD Gram matrix satisfies the constraints (affine residual stalled at {residual:.3e})"
    )]
    Infeasible { residual: f64 },

    #[error("solver stopped after {iterations} iterations with affine residual {residual:.3e}")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("operator is not Hermitian: imaginary part of expectation is {imag:.3e}")]
    NonHermitian { imag: f64 },

    #[error("observable {name} is not dichotomic: eigenvalue {eigenvalue} is not +1 or -1")]
    NonDichotomic { name: String, eigenvalue: f64 },

    #[error("invalid quantum system: {0}")]
    InvalidSystem(String),

    #[error("junk state undefined: |(I + Z'_A) psi| = {norm:.3e}")]
    DegenerateJunk { norm: f64 },

    #[error("theta = {0} is outside (0, pi/4]")]
    ThetaRange(f64),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid certificate: {0}")]
    Certificate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta <= std::f64::consts::FRAC_PI_4 + 1e-12 {
        Ok(())
    } else {
        Err(Error::ThetaRange(theta))
    }
}
