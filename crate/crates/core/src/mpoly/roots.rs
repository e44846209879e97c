//! Roots of univariate polynomials in the coefficient field.
//!
//! Over `F_p` the roots come from `gcd(f, z^p - z)` and equal-degree
//! splitting. Over the rationals, roots of a good reduction are lifted by
//! Newton iteration modulo `p^(2^k)`, recovered by rational reconstruction
//! and then checked exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::{is_prime_u64, rational_reconstruct, seeded_rng, Scalar};

use super::upoly::UPoly;

/// Distinct roots in the coefficient field of `sum coeffs[i] z^i`,
/// sorted by their canonical rational representative.
pub fn univariate_roots<K: Scalar>(coeffs: &[K], field: &K::Field) -> Vec<K> {
    let ch = K::characteristic(field);
    let mut out: Vec<K> = if ch == 0 {
        let q: Vec<BigRational> = coeffs.iter().map(|c| c.to_rational()).collect();
        rational_roots(&q)
            .into_iter()
            .filter_map(|r| K::from_rational(field, &r))
            .collect()
    } else {
        let c: Vec<u64> = coeffs.iter().map(|c| c.residue(ch).unwrap()).collect();
        let f = UPoly::new(c, ch);
        f.roots(&mut seeded_rng(ch))
            .into_iter()
            .map(|v| K::from_bigint(field, &BigInt::from(v)))
            .collect()
    };
    out.sort_by_key(|r| r.to_rational());
    out
}

fn eval_int(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(m))
}

/// Distinct rational roots, ascending.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(|x| Zero::is_zero(x)) {
        c.pop();
    }
    if c.len() <= 1 {
        return vec![];
    }
    let mut roots = Vec::new();
    let lead_zeros = c.iter().take_while(|x| Zero::is_zero(*x)).count();
    if lead_zeros > 0 {
        roots.push(BigRational::zero());
        c.drain(..lead_zeros);
    }
    c = squarefree_dense(&c);
    // integer coefficients
    let den = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * &den).to_integer()).collect();
    if ints.len() > 1 {
        roots.extend(integer_poly_roots(&ints));
    }
    roots.sort();
    roots.dedup();
    roots
}

fn rem_dense(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let q = r.last().unwrap() / b.last().unwrap();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = &r[k + j] - &q * bj;
        }
        r.pop();
        while r.last().is_some_and(|x| Zero::is_zero(x)) {
            r.pop();
        }
    }
    r
}

fn squarefree_dense(f: &[BigRational]) -> Vec<BigRational> {
    let d: Vec<BigRational> =
        f.iter().enumerate().skip(1).map(|(i, a)| a * BigRational::from_integer(i.into())).collect();
    let (mut a, mut b) = (f.to_vec(), d);
    while !b.is_empty() {
        let r = rem_dense(&a, &b);
        a = b;
        b = r;
    }
    if a.len() <= 1 {
        return f.to_vec();
    }
    // exact quotient f / a
    let mut r = f.to_vec();
    let da = a.len() - 1;
    let mut q = vec![BigRational::zero(); f.len() - da];
    for k in (0..q.len()).rev() {
        let c = &r[k + da] / a.last().unwrap();
        for (j, aj) in a.iter().enumerate() {
            r[k + j] = &r[k + j] - &c * aj;
        }
        q[k] = c;
    }
    q
}

fn integer_poly_roots(f: &[BigInt]) -> Vec<BigRational> {
    let deg = f.len() - 1;
    let a0 = f[0].abs();
    let an = f[deg].abs();
    let bound = a0.clone().max(an.clone()).max(BigInt::one());
    // need p^k > 2 * bound^2 for reconstruction
    let target = &bound * &bound * 2u32;
    let mut p: u64 = (1 << 31) - 1;
    let fp_of = |p: u64| -> Vec<u64> {
        f.iter().map(|a| a.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect()
    };
    let (p, modp) = loop {
        if is_prime_u64(p) && !(&an % p).is_zero() {
            let g = UPoly::new(fp_of(p), p);
            if g.gcd(&g.derivative()).degree() == Some(0) {
                break (p, g);
            }
        }
        p -= 2;
    };
    let deriv: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, a)| a * i).collect();
    let mut out = Vec::new();
    for r in modp.roots(&mut seeded_rng(p)) {
        let mut x = BigInt::from(r);
        let mut m = BigInt::from(p);
        while m <= target {
            m = &m * &m;
            let fx = eval_int(f, &x, &m);
            let dx = eval_int(&deriv, &x, &m);
            let inv = match mod_inverse(&dx, &m) {
                Some(v) => v,
                None => break,
            };
            x = (&x - fx * inv).mod_floor(&m);
        }
        if let Ok(Some(q)) = rational_reconstruct(&x, &m) {
            let val = f
                .iter()
                .rev()
                .fold(BigRational::zero(), |acc, a| acc * &q + BigRational::from_integer(a.clone()));
            if Zero::is_zero(&val) {
                out.push(q);
            }
        }
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp, PrimeField, Rational, Rationals};

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn rational_examples() {
        // (2z - 1)(z + 3)(z^2 + 1) z
        let f = [0, -3, 5, -1, 5, 2].map(|v| r(v, 1));
        assert_eq!(rational_roots(&f), vec![r(-3, 1), r(0, 1), r(1, 2)]);
        // 1 + c^3
        assert_eq!(rational_roots(&[r(1, 1), r(0, 1), r(0, 1), r(1, 1)]), vec![r(-1, 1)]);
        // repeated root
        assert_eq!(rational_roots(&[r(1, 1), r(-2, 1), r(1, 1)]), vec![r(1, 1)]);
        assert_eq!(univariate_roots(&[r(-4, 9), r(0, 1), r(1, 1)], &Rationals), vec![r(-2, 3), r(2, 3)]);
    }

    #[test]
    fn prime_field_roots() {
        let f = PrimeField::new(17);
        // 1 + c^3 over F_17: c = -1 only (17 = 2 mod 3)
        let c: Vec<Fp> = [1, 0, 0, 1].iter().map(|&v| f.elem(v)).collect();
        assert_eq!(univariate_roots(&c, &f), vec![f.from_i64(-1)]);
    }
}
