//! The family `z^{-d} + c` and its period polynomials, and the bicritical
//! map whose critical points are strictly preperiodic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{is_prime_u64, Scalar};
use crate::dynamics::{Endomorphism, OrbitRecord, ProjectivePoint};
use crate::error::{Error, Result};
use crate::mpoly::{univariate_roots, Monomial, Polynomial};

/// Numerator of `f^s(0)` for `f(z) = z^{-d} + c`, as integer coefficients
/// in `c`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodPolynomial {
    pub d: u32,
    pub s: u32,
    pub coeffs: Vec<BigInt>,
}

impl PeriodPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs_in<K: Scalar>(&self, field: &K::Field) -> Vec<K> {
        self.coeffs.iter().map(|c| K::from_bigint(field, c)).collect()
    }
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pow(a: &[BigInt], e: u32) -> Vec<BigInt> {
    (0..e).fold(vec![BigInt::one()], |acc, _| mul(&acc, a))
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.last().is_some_and(|x| x.is_zero()) {
        out.pop();
    }
    out
}

/// `N_s` from `(N_0, D_0) = (0, 1)` and
/// `(N_{k+1}, D_{k+1}) = (D_k^d + c N_k^d, N_k^d)`, with content removed.
pub fn period_polynomial(d: u32, s: u32) -> Result<PeriodPolynomial> {
    if d < 2 || s < 2 {
        return Err(Error::InvalidInput(format!("period polynomials need d, s >= 2, got d = {d}, s = {s}")));
    }
    let c = vec![BigInt::zero(), BigInt::one()];
    let (mut num, mut den) = (vec![], vec![BigInt::one()]);
    for _ in 0..s {
        let nd = pow(&num, d);
        num = add(&pow(&den, d), &mul(&c, &nd));
        den = nd;
    }
    let g = num.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let sign = if num.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    let coeffs = num.iter().map(|x| x / &g * &sign).collect();
    Ok(PeriodPolynomial { d, s, coeffs })
}

/// `z^{-d} + c` as `(y^d + c x^d : x^d)`.
pub fn unicritical_inverse_map<K: Scalar>(d: u32, c: K) -> Result<Endomorphism<K>> {
    let field = c.field();
    let f0 = Polynomial::from_terms(
        2,
        field.clone(),
        [(Monomial::new(&[0, d]), K::one_in(&field)), (Monomial::new(&[d, 0]), c)],
    );
    let f1 = Polynomial::term(2, field.clone(), Monomial::new(&[d, 0]), K::one_in(&field));
    Endomorphism::new(vec![f0, f1])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcfParameter<K: Scalar> {
    pub c: K,
    /// Orbit of the critical point 0, periodic with tail 0.
    pub orbit: OrbitRecord<K>,
}

/// A root `c` in the field of the period-`p` polynomial for which 0 has
/// exact period `p` under `z^{-d} + c`, checked on the orbit.
pub fn find_pcf_parameter<K: Scalar>(d: u32, p: u32, field: &K::Field) -> Result<Option<PcfParameter<K>>> {
    if !is_prime_u64(p as u64) {
        return Err(Error::InvalidInput(format!("period {p} is not prime")));
    }
    let g = period_polynomial(d, p)?;
    for c in univariate_roots(&g.coeffs_in::<K>(field), field) {
        let f = unicritical_inverse_map(d, c.clone())?;
        let zero = ProjectivePoint::affine(field, K::zero_in(field));
        let orbit = f.orbit(&zero, p as usize)?;
        if orbit.tail == Some(0) && orbit.period == Some(p as usize) {
            return Ok(Some(PcfParameter { c, orbit }));
        }
    }
    Ok(None)
}

/// A primitive `d`-th root of unity other than 1, if the field has one.
pub fn primitive_root_of_unity<K: Scalar>(d: u32, field: &K::Field) -> Option<K> {
    if d < 2 {
        return None;
    }
    let one = K::one_in(field);
    let is_primitive = |z: &K| z.pow(d as u64) == one && (1..d).all(|k| z.pow(k as u64) != one);
    let p = K::characteristic(field);
    if p == 0 {
        let m = -one.clone();
        return (d == 2).then_some(m);
    }
    if (p - 1) % d as u64 != 0 {
        return None;
    }
    (2..p.min(10_000)).map(|a| K::from_i64(field, a as i64).pow((p - 1) / d as u64)).find(is_primitive)
}

/// `f(z) = 1 + (zeta - 1)/z^d`, as `(x^d + (zeta - 1) y^d : x^d)`. Its
/// critical points are 0 and infinity, with orbit `0 -> oo -> 1 -> zeta`
/// and `zeta` fixed; the orbit is verified, which shows that neither
/// critical point is periodic.
pub fn bicritical_wanderer<K: Scalar>(d: u32, zeta: K) -> Result<Endomorphism<K>> {
    let field = zeta.field();
    let one = K::one_in(&field);
    if d < 2 || zeta.pow(d as u64) != one || zeta == one {
        return Err(Error::Precondition(format!("{zeta} is not a d-th root of unity other than 1 for d = {d}")));
    }
    let f0 = Polynomial::from_terms(
        2,
        field.clone(),
        [(Monomial::new(&[d, 0]), one.clone()), (Monomial::new(&[0, d]), zeta.clone() - one.clone())],
    );
    let f1 = Polynomial::term(2, field.clone(), Monomial::new(&[d, 0]), one.clone());
    let f = Endomorphism::new(vec![f0, f1])?;
    let orbit = f.orbit(&ProjectivePoint::affine(&field, K::zero_in(&field)), 8)?;
    let expected = [
        ProjectivePoint::affine(&field, K::zero_in(&field)),
        ProjectivePoint::infinity(&field),
        ProjectivePoint::affine(&field, one),
        ProjectivePoint::affine(&field, zeta.clone()),
    ];
    if orbit.points[..4] != expected || orbit.tail != Some(3) || orbit.period != Some(1) {
        return Err(Error::Verification("unexpected critical orbit".into()));
    }
    Ok(f)
}
