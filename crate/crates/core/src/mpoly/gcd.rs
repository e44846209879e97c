//! Multivariate gcd, exact division, contents and squarefree parts.
//!
//! The gcd is a recursive primitive PRS on one variable at a time. Before the
//! PRS runs, two cheap certificates are tried: exact divisibility, and a
//! modular coprimality test that maps both inputs to univariate polynomials
//! over a large prime field.

use rand::Rng;

use crate::coeff::{seeded_rng, Scalar, DEFAULT_PRIME};
use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::upoly::UPoly;

type Poly<K> = Polynomial<K>;

/// `a / b` when `b` divides `a` exactly, else `None`.
pub fn div_exact<K: Scalar>(a: &Poly<K>, b: &Poly<K>) -> Option<Poly<K>> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let nv = a.nvars();
    let field = a.field().clone();
    let mut q = Poly::zero(nv, field.clone());
    if a.is_zero() {
        return Some(q);
    }
    let (lm, lc) = b.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
    let lc_inv = lc.inv()?;
    // quick rejections: degrees and single-variable degrees
    if a.degree()? < b.degree()? {
        return None;
    }
    for v in 0..nv {
        if b.degree_in(v) > a.degree_in(v) {
            return None;
        }
    }
    let mut r = a.clone();
    while let Some((m, c)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let qm = m.div(&lm)?;
        let qc = c * lc_inv.clone();
        for (bm, bc) in b.terms() {
            r.add_term(bm.mul(&qm), -(bc.clone() * qc.clone()));
        }
        q.add_term(qm, qc);
    }
    Some(q)
}

/// `lc_v(b)^k · a mod b` with respect to variable `v`, for the smallest
/// convenient `k`; scalar multiples are irrelevant to the PRS.
fn pseudo_rem<K: Scalar>(a: &Poly<K>, b: &Poly<K>, v: usize) -> Poly<K> {
    let db = b.degree_in(v);
    let parts = b.split_by_var(v);
    let lcb = parts[&db].clone();
    let mut r = a.clone();
    loop {
        let dr = r.degree_in(v);
        if r.is_zero() || dr < db {
            return r;
        }
        let lcr = r.split_by_var(v).remove(&dr).unwrap();
        let shift = Monomial::var(a.nvars(), v, dr - db);
        r = &(&r * &lcb) - &(&lcr * &b.mul_monomial(&shift));
    }
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `vars`.
pub fn content_wrt<K: Scalar>(p: &Poly<K>, vars: &[usize]) -> Poly<K> {
    let mut groups: std::collections::BTreeMap<Vec<u32>, Poly<K>> = Default::default();
    for (m, c) in p.terms() {
        let key: Vec<u32> = vars.iter().map(|&v| m.exps()[v]).collect();
        let mut rest = m.clone();
        for &v in vars {
            rest.exps_mut()[v] = 0;
        }
        groups
            .entry(key)
            .or_insert_with(|| Poly::zero(p.nvars(), p.field().clone()))
            .add_term(rest, c.clone());
    }
    let mut coeffs: Vec<Poly<K>> = groups.into_values().collect();
    // small coefficients first: the gcd tends to collapse early
    coeffs.sort_by_key(|c| c.num_terms());
    let mut g = Poly::zero(p.nvars(), p.field().clone());
    for c in coeffs {
        g = gcd(&g, &c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Normalized greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd<K: Scalar>(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
    a.check_ring(b).expect("gcd operands must share a ring");
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let one = Poly::one(a.nvars(), a.field().clone());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let mg = ma.gcd(&mb);
    let a = a.div_monomial(&ma).unwrap().normalized();
    let b = b.div_monomial(&mb).unwrap().normalized();
    let core = gcd_core(&a, &b);
    core.mul_monomial(&mg).normalized()
}

fn gcd_core<K: Scalar>(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
    let nv = a.nvars();
    let one = Poly::one(nv, a.field().clone());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    if a == b {
        return a.clone();
    }
    let (small, big) = if a.num_terms() <= b.num_terms() { (a, b) } else { (b, a) };
    if div_exact(big, small).is_some() {
        return small.clone();
    }
    let sa = a.support_vars();
    let sb = b.support_vars();
    let common: Vec<usize> = sa.iter().copied().filter(|v| sb.contains(v)).collect();
    if common.is_empty() {
        return one;
    }
    // a variable present on one side only cannot occur in the gcd
    if let Some(&v) = sa.iter().find(|v| !sb.contains(v)) {
        return gcd(&content_wrt(a, &[v]), b);
    }
    if let Some(&v) = sb.iter().find(|v| !sa.contains(v)) {
        return gcd(a, &content_wrt(b, &[v]));
    }
    if certify_coprime(a, b, &common) {
        return one;
    }
    // most frequent variable as the main variable
    let v = *common
        .iter()
        .max_by_key(|&&v| a.terms().chain(b.terms()).filter(|(m, _)| m.exps()[v] > 0).count())
        .unwrap();
    let ca = content_wrt(a, &[v]);
    let cb = content_wrt(b, &[v]);
    let c = gcd(&ca, &cb);
    let mut p = div_exact(a, &ca).unwrap();
    let mut q = div_exact(b, &cb).unwrap();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while q.degree_in(v) > 0 {
        let r = pseudo_rem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        let cr = content_wrt(&r, &[v]);
        p = q;
        q = div_exact(&r, &cr).unwrap().normalized();
    }
    let g = if q.degree_in(v) == 0 { one } else { q };
    (&g * &c).normalized()
}

/// Maps `p` to a univariate polynomial in `v` over `F_q` at the point `pt`.
fn univariate_image<K: Scalar>(p: &Poly<K>, v: usize, pt: &[u64], q: u64) -> Option<UPoly> {
    let mut coeffs = vec![0u64; p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = c.residue(q)? as u128;
        for (i, &e) in m.exps().iter().enumerate() {
            if i != v && e > 0 {
                t = t * crate_powmod(pt[i], e as u64, q) as u128 % q as u128;
            }
        }
        let k = m.exps()[v] as usize;
        coeffs[k] = ((coeffs[k] as u128 + t) % q as u128) as u64;
    }
    Some(UPoly::new(coeffs, q))
}

fn crate_powmod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % q as u128) as u64;
        }
        b = (b as u128 * b as u128 % q as u128) as u64;
        e >>= 1;
    }
    acc
}

fn working_prime<K: Scalar>(field: &K::Field) -> u64 {
    match K::characteristic(field) {
        0 => DEFAULT_PRIME,
        p => p,
    }
}

fn image_seed<K: Scalar>(a: &Poly<K>) -> u64 {
    a.num_terms() as u64 ^ ((a.degree().unwrap_or(0) as u64) << 32)
}

/// True only if `a` and `b` are certainly coprime.
fn certify_coprime<K: Scalar>(a: &Poly<K>, b: &Poly<K>, common: &[usize]) -> bool {
    let q = working_prime::<K>(a.field());
    let mut rng = seeded_rng(image_seed(a) ^ image_seed(b).rotate_left(17));
    'vars: for &v in common {
        for _ in 0..3 {
            let pt: Vec<u64> = (0..a.nvars()).map(|_| rng.gen_range(0..q)).collect();
            let (Some(ia), Some(ib)) =
                (univariate_image(a, v, &pt, q), univariate_image(b, v, &pt, q))
            else {
                return false;
            };
            if ia.degree() != Some(a.degree_in(v) as usize)
                || ib.degree() != Some(b.degree_in(v) as usize)
            {
                continue;
            }
            if ia.gcd(&ib).degree() == Some(0) {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    true
}

/// True only if `p` is certainly squarefree.
fn certify_squarefree<K: Scalar>(p: &Poly<K>) -> bool {
    let q = working_prime::<K>(p.field());
    let mut rng = seeded_rng(image_seed(p));
    'vars: for v in p.support_vars() {
        for _ in 0..3 {
            let pt: Vec<u64> = (0..p.nvars()).map(|_| rng.gen_range(0..q)).collect();
            let Some(h) = univariate_image(p, v, &pt, q) else {
                return false;
            };
            if h.degree() != Some(p.degree_in(v) as usize) {
                continue;
            }
            if h.gcd(&h.derivative()).degree() == Some(0) {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    true
}

/// Product of the distinct irreducible factors of `p`, normalized.
pub fn squarefree_part<K: Scalar>(p: &Poly<K>) -> Result<Poly<K>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let nv = p.nvars();
    let mc = p.monomial_content();
    let mut result = Poly::one(nv, p.field().clone());
    let radical: Vec<u32> = mc.exps().iter().map(|&e| u32::from(e > 0)).collect();
    result = result.mul_monomial(&Monomial::new(&radical));
    let mut rem = p.div_monomial(&mc).unwrap().normalized();
    if rem.is_constant() {
        return Ok(result.normalized());
    }
    if certify_squarefree(&rem) {
        return Ok((&result * &rem).normalized());
    }
    while !rem.is_constant() {
        let mut progressed = false;
        for v in rem.support_vars() {
            let d = rem.partial_derivative(v)?;
            if d.is_zero() {
                continue;
            }
            let g = gcd(&rem, &d);
            let r = div_exact(&rem, &g).expect("gcd divides its argument").normalized();
            if r.is_constant() {
                continue;
            }
            result = &result * &r;
            loop {
                let g = gcd(&rem, &r);
                if g.is_constant() {
                    break;
                }
                rem = div_exact(&rem, &g).unwrap().normalized();
            }
            progressed = true;
            if rem.is_constant() {
                break;
            }
        }
        if !progressed {
            // every derivative vanishes: rem is a p-th power in characteristic p
            let ch = K::characteristic(rem.field()) as u32;
            if ch == 0 {
                return Err(Error::InvalidInput("squarefree decomposition stalled".into()));
            }
            rem = Poly::from_terms(
                nv,
                rem.field().clone(),
                rem.terms().map(|(m, c)| {
                    let e: Vec<u32> = m.exps().iter().map(|&e| e / ch).collect();
                    (Monomial::new(&e), c.pth_root())
                }),
            );
        }
    }
    Ok(result.normalized())
}

/// `(content, primitive)` with `content · primitive = p`, where `primitive` is
/// the canonical representative of `p` up to scalars.
pub fn content_primitive<K: Scalar>(p: &Poly<K>) -> Result<(K, Poly<K>)> {
    let u = p.content_unit().ok_or(Error::ZeroPolynomial)?;
    Ok((u.clone(), p.scale(&u.inv().unwrap())))
}
