//! Exact computer algebra for the dynamics of endomorphisms of projective space.
//!
//! The layers, bottom up: [`coeff`] (rationals and prime fields), [`mpoly`]
//! (sparse multivariate polynomials), [`resultant`] (Sylvester and Macaulay
//! resultants), [`dynamics`] (maps, images of hypersurfaces, certificates)
//! and [`sympow`] (symmetric powers of maps of the projective line).

pub mod coeff;
pub mod dynamics;
pub mod error;
pub mod mpoly;
pub mod resultant;
pub mod sympow;

pub use coeff::{FieldSpec, Fp, PrimeField, Rational, Rationals, Scalar};
pub use error::{Error, Result};
pub use mpoly::Polynomial;

/// Polynomials over the rationals.
pub type QPoly = Polynomial<Rational>;
/// Polynomials over a prime field.
pub type FpPoly = Polynomial<Fp>;
