//! Sparse homogeneous polynomials over an exact field.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{binomial, graded_dim, monomial_basis, Monomial, MonomialBasis};
pub use polynomial::{Family, Polynomial};
pub use ring::PolyRing;
