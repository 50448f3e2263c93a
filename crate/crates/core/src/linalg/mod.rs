//! Exact elimination over a [`Field`](crate::field::Field) and small dense
//! numeric routines.

mod dense;
mod exact;
mod jacobi;

pub use dense::{
    complex, hermitian_eigen, hermitian_eigen_jacobi, numeric_rank, operator_norm, psd_factor,
    singular_values, sym_eigen, CMat, CVec, Eigen, RMat,
};
pub use exact::{determinant, kernel, mat_vec, rank, rref, solve};
pub use jacobi::jacobi_eigen;
