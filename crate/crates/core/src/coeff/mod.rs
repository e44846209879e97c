//! Exact coefficient arithmetic.
//!
//! Everything above this module is generic over [`Scalar`], which is
//! implemented for [`Rational`] (arbitrary-precision rationals) and [`Fp`]
//! (a prime field with a runtime modulus). Field elements know their field,
//! but the zero polynomial does not have any coefficients to ask, so
//! polynomials also carry the field value (`Scalar::Field`).

mod crt;
mod fp;
mod primes;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use crt::{crt_combine, rational_reconstruct, ModularResidueSet};
pub use fp::{Fp, PrimeField};
pub use primes::{is_prime_u64, modular_primes, DEFAULT_PRIME};
pub use rational::{Rationals, RATIONAL_SAMPLE_BOUND};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// How a parametric computation over a field reaches prime-field images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModularPlan {
    /// The field is already a large prime field; work in it directly.
    Direct(u64),
    /// Work modulo a sequence of large primes and lift by CRT plus rational
    /// reconstruction.
    Lift,
    /// The field is a prime field too small to host interpolation nodes;
    /// lift representatives to the rationals, compute there, reduce back.
    ViaRationals,
}

/// An exact scalar in a field that is known at runtime.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// The field this scalar belongs to.
    type Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static;

    fn field(&self) -> Self::Field;
    fn zero_in(field: &Self::Field) -> Self;
    fn one_in(field: &Self::Field) -> Self;
    fn from_bigint(field: &Self::Field, n: &BigInt) -> Self;
    /// `None` when the denominator vanishes in the field.
    fn from_rational(field: &Self::Field, q: &BigRational) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    /// 0 for the rationals.
    fn characteristic(field: &Self::Field) -> u64;
    fn spec(field: &Self::Field) -> FieldSpec;

    /// Deterministic draw from the field (bounded range for rationals).
    fn random<R: Rng + ?Sized>(field: &Self::Field, rng: &mut R) -> Self;

    /// The scalar `u` such that dividing every coefficient by `u` yields the
    /// canonical representative of the coefficient vector up to scalars.
    /// `coeffs` yields the leading coefficient first. `None` if all are zero.
    fn normalizing_unit<'a, I>(coeffs: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a;

    /// Image modulo a prime `p`; `None` when a denominator is divisible by `p`.
    fn residue(&self, p: u64) -> Option<u64>;
    /// Reconstructs a field element from images modulo distinct primes.
    fn lift(field: &Self::Field, images: &[(u64, u64)]) -> Option<Self>;
    fn modular_plan(field: &Self::Field, nodes_needed: u64) -> ModularPlan;

    /// Canonical rational representative (symmetric integer lift for `Fp`).
    fn to_rational(&self) -> BigRational;
    /// Inverse Frobenius; the identity on prime fields.
    fn pth_root(&self) -> Self {
        self.clone()
    }
    /// All elements, for finite fields small enough to enumerate.
    fn elements(field: &Self::Field) -> Option<Vec<Self>>;

    fn from_i64(field: &Self::Field, n: i64) -> Self {
        Self::from_bigint(field, &BigInt::from(n))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_in(&self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Runtime description of a coefficient field, as written on the command line:
/// `QQ` or `Fp:<prime>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 3 || !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!(
                "characteristic {p} must be an odd prime"
            )));
        }
        if p >= 1 << 63 {
            return Err(Error::InvalidInput(format!("prime {p} exceeds 63 bits")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad prime in field spec {s:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::InvalidInput(format!(
            "unknown field spec {s:?} (expected QQ or Fp:<prime>)"
        )))
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

/// A field element tagged with its field, for runtime-dispatched callers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(Rational),
    Prime(Fp),
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Prime(x) => FieldSpec::Prime(x.modulus()),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Prime(x) => write!(f, "{x}"),
        }
    }
}

/// Deterministic seeded RNG used throughout the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws a field element from a seed. Rationals have numerator in
/// `[-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND]` and denominator in
/// `[1, RATIONAL_SAMPLE_BOUND]` before reduction to lowest terms.
pub fn random_element(field: FieldSpec, seed: u64) -> FieldElement {
    let mut rng = seeded_rng(seed);
    match field {
        FieldSpec::Rationals => FieldElement::Rational(Rational::random(&Rationals, &mut rng)),
        FieldSpec::Prime(p) => FieldElement::Prime(Fp::random(&PrimeField::new(p), &mut rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_syntax() {
        assert_eq!("QQ".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Fp:65537".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(65537));
        assert!("Fp:2".parse::<FieldSpec>().is_err());
        assert!("Fp:9".parse::<FieldSpec>().is_err());
        assert!("ZZ".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(101).to_string(), "Fp:101");
    }

    #[test]
    fn random_element_is_deterministic() {
        let f = FieldSpec::Prime(101);
        assert_eq!(random_element(f, 7), random_element(f, 7));
        let draws: std::collections::HashSet<_> =
            (0..20).map(|s| random_element(f, s)).collect();
        assert!(draws.len() > 1);
        for s in 0..50 {
            match random_element(FieldSpec::Rationals, s) {
                FieldElement::Rational(q) => {
                    let b = BigInt::from(RATIONAL_SAMPLE_BOUND);
                    assert!(q.numer() <= &b && q.numer() >= &-b.clone());
                    assert!(q.denom() <= &b);
                }
                _ => unreachable!(),
            }
        }
    }
}
