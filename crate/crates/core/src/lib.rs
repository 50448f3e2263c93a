//! Sum-of-squares certificates for the tilted CHSH family of Bell operators.

pub mod algebra;
pub mod angle;
pub mod certificates;
pub mod error;
pub mod field;
pub mod linalg;
pub mod qubit;
pub mod sdp;
pub mod selftest;

pub use algebra::{Monomial, NcPoly};
pub use angle::Tilt;
pub use error::{Error, Result};
pub use field::{Field, Radicals, RatFun, RatPoly, Scalar, Surd};

/// Polynomials with coefficients exact in θ.
pub type ExactPoly = NcPoly<Scalar>;
/// Polynomials exact at θ = π/4 or π/8.
pub type SurdPoly = NcPoly<Surd>;
/// Polynomials evaluated at a fixed angle.
pub type NumPoly = NcPoly<f64>;
