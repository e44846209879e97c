use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{crt_combine, rational_reconstruct, FieldSpec, ModularPlan, ModularResidueSet, Scalar};

/// Bound on numerator and denominator of randomly drawn rationals.
pub const RATIONAL_SAMPLE_BOUND: i64 = 100;

/// Marker for the field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl fmt::Display for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ")
    }
}

impl Scalar for BigRational {
    type Field = Rationals;

    fn field(&self) -> Rationals {
        Rationals
    }

    fn zero_in(_: &Rationals) -> Self {
        BigRational::zero()
    }

    fn one_in(_: &Rationals) -> Self {
        BigRational::one()
    }

    fn from_bigint(_: &Rationals, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_rational(_: &Rationals, q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn characteristic(_: &Rationals) -> u64 {
        0
    }

    fn spec(_: &Rationals) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn random<R: Rng + ?Sized>(_: &Rationals, rng: &mut R) -> Self {
        let b = RATIONAL_SAMPLE_BOUND;
        let num = rng.gen_range(-b..=b);
        let den = rng.gen_range(1..=b);
        BigRational::new(num.into(), den.into())
    }

    /// `gcd(numerators) / lcm(denominators)`, signed like the leading coefficient.
    fn normalizing_unit<'a, I>(coeffs: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut it = coeffs.into_iter().filter(|c| !Zero::is_zero(*c));
        let lead = it.next()?;
        let mut g = lead.numer().abs();
        let mut l = lead.denom().clone();
        for c in it {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let u = BigRational::new(g, l);
        Some(if lead.is_negative() { -u } else { u })
    }

    fn residue(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let d = self.denom().mod_floor(&pb);
        if d.is_zero() {
            return None;
        }
        let n = self.numer().mod_floor(&pb).to_u64()?;
        let d = d.to_u64()?;
        let dinv = super::fp::powmod(d, p - 2, p);
        Some(((n as u128 * dinv as u128) % p as u128) as u64)
    }

    fn lift(_: &Rationals, images: &[(u64, u64)]) -> Option<Self> {
        let set = ModularResidueSet::new(
            images.iter().map(|&(q, v)| (BigInt::from(v), BigInt::from(q))).collect(),
        )
        .ok()?;
        let modulus: BigInt = images.iter().map(|&(q, _)| BigInt::from(q)).product();
        let sym = crt_combine(&set).ok()?;
        let v = sym.mod_floor(&modulus);
        rational_reconstruct(&v, &modulus).ok().flatten()
    }

    fn modular_plan(_: &Rationals, _: u64) -> ModularPlan {
        ModularPlan::Lift
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn elements(_: &Rationals) -> Option<Vec<Self>> {
        None
    }
}
