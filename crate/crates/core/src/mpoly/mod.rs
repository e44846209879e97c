//! Sparse multivariate polynomials over a [`Scalar`](crate::coeff::Scalar)
//! field, with the algorithms built on top of them.

mod gcd;
mod interp;
mod matrix;
mod monomial;
mod parse;
mod poly;
mod roots;
pub(crate) mod upoly;

pub use gcd::{content_primitive, content_wrt, div_exact, gcd, squarefree_part};
pub use interp::{interpolate, DegreeGroup, NewtonGrid};
pub use matrix::{
    det_scalar, determinant, determinant_bareiss, determinant_cofactor, solve_scalar, PolyMatrix,
};
pub use monomial::{binomial, monomials_of_degree, Monomial};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::Polynomial;
pub use roots::{rational_roots, univariate_roots};
