//! Polynomials in two parties' dichotomic observables `A0, A1` and `B0, B1`
//! with `X·X = 1` and Alice's operators commuting with Bob's.

mod bell;
mod parse;
mod poly;
mod word;

pub use bell::{
    basis_collect, basis_expand, in_operator_span, operator_vector, product_basis, product_index,
    shifted_operator, tilted_chsh, tilted_chsh_with,
};
pub use parse::{parse_poly, parse_scalar};
pub use poly::NcPoly;
pub use word::{Monomial, Word};
