use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{crt_combine, FieldSpec, ModularPlan, ModularResidueSet, Scalar};

/// Prime field `F_p` for an odd prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics unless `p` is an odd prime below `2^63`; use
    /// [`FieldSpec::prime`] to validate untrusted input.
    pub fn new(p: u64) -> Self {
        assert!(
            p >= 3 && p < (1 << 63) && super::is_prime_u64(p),
            "{p} is not an odd prime below 2^63"
        );
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp { v: v % self.p, p: self.p }
    }

    pub fn from_i64(&self, v: i64) -> Fp {
        Fp { v: v.rem_euclid(self.p as i64) as u64, p: self.p }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fp:{}", self.p)
    }
}

/// Element of `F_p`, stored reduced to `[0, p)` next to its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn symmetric(&self) -> i64 {
        if self.v > self.p / 2 {
            -((self.p - self.v) as i64)
        } else {
            self.v as i64
        }
    }

    #[inline]
    fn check(&self, other: &Fp) {
        debug_assert_eq!(self.p, other.p, "mixing elements of different prime fields");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, o: Fp) -> Fp {
        self.check(&o);
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, o: Fp) -> Fp {
        self.check(&o);
        let v = if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v };
        Fp { v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, o: Fp) -> Fp {
        self.check(&o);
        Fp { v: mulmod(self.v, o.v, self.p), p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, o: Fp) -> Fp {
        self * o.inv().expect("division by zero in F_p")
    }
}

impl Scalar for Fp {
    type Field = PrimeField;

    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn zero_in(field: &PrimeField) -> Self {
        Fp { v: 0, p: field.p }
    }

    fn one_in(field: &PrimeField) -> Self {
        Fp { v: 1, p: field.p }
    }

    fn from_bigint(field: &PrimeField, n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(field.p));
        Fp { v: r.to_u64().unwrap(), p: field.p }
    }

    fn from_rational(field: &PrimeField, q: &BigRational) -> Option<Self> {
        let den = Self::from_bigint(field, q.denom());
        let inv = den.inv()?;
        Some(Self::from_bigint(field, q.numer()) * inv)
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_one(&self) -> bool {
        self.v == 1
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        // extended Euclid on (v, p)
        let (mut r0, mut r1) = (self.p as i128, self.v as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp { v: t0.rem_euclid(self.p as i128) as u64, p: self.p })
    }

    fn characteristic(field: &PrimeField) -> u64 {
        field.p
    }

    fn spec(field: &PrimeField) -> FieldSpec {
        FieldSpec::Prime(field.p)
    }

    fn random<R: Rng + ?Sized>(field: &PrimeField, rng: &mut R) -> Self {
        Fp { v: rng.gen_range(0..field.p), p: field.p }
    }

    fn normalizing_unit<'a, I>(coeffs: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Self>,
    {
        coeffs.into_iter().find(|c| !c.is_zero()).copied()
    }

    fn residue(&self, p: u64) -> Option<u64> {
        if p == self.p {
            Some(self.v)
        } else {
            None
        }
    }

    fn lift(field: &PrimeField, images: &[(u64, u64)]) -> Option<Self> {
        images
            .iter()
            .find(|(q, _)| *q == field.p)
            .map(|&(_, v)| Fp { v, p: field.p })
            .or_else(|| {
                // images over other primes: combine and reduce
                let set = ModularResidueSet::new(
                    images.iter().map(|&(q, v)| (BigInt::from(v), BigInt::from(q))).collect(),
                )
                .ok()?;
                let n = crt_combine(&set).ok()?;
                Some(Self::from_bigint(field, &n))
            })
    }

    fn modular_plan(field: &PrimeField, nodes_needed: u64) -> ModularPlan {
        // leave generous slack so that random nodes rarely collide with
        // degenerate specialisations
        if field.p > 4 * nodes_needed.max(1) + 64 {
            ModularPlan::Direct(field.p)
        } else {
            ModularPlan::ViaRationals
        }
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.symmetric()))
    }

    fn elements(field: &PrimeField) -> Option<Vec<Self>> {
        if field.p > 1 << 20 {
            return None;
        }
        Some((0..field.p).map(|v| Fp { v, p: field.p }).collect())
    }
}
