//! Exact computations in graded polynomial rings.
//!
//! `gradus` works with homogeneous polynomials over the rationals or a prime
//! field and computes, by exact linear algebra in each graded piece:
//! Jacobian ideals and Milnor algebras, smoothness certificates for
//! hypersurfaces and complete intersections, apolar (perp) spaces, colon
//! ideals, Macaulay duality pairings, defects of point sets, and strong
//! Lefschetz checks. The [`pipeline`] module strings these together for
//! cubic threefolds `F` and quadrics `Q` in five variables, producing
//! self-contained certificates.
//!
//! Monomials within a degree are ordered by descending lexicographic order
//! of exponent vectors (`x0^3` first); every matrix column, canonical basis
//! and printed polynomial uses that order.

pub mod apolarity;
pub mod cli;
pub mod error;
pub mod field;
pub mod jacobian;
pub mod lefschetz;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod random;
pub mod report;
pub mod singular;

pub use error::{Error, Result};
pub use field::{Field, FieldConfig, PrimeField, Rationals};
pub use linalg::{GradedSubspace, Matrix};
pub use poly::{Family, Monomial, PolyRing, Polynomial};
