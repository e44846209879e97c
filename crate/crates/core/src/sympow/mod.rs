//! Symmetric powers of maps of the projective line.
//!
//! Unordered `n`-tuples of points of `P^1` are identified with binary forms
//! of degree `n` through the Vieta map, and those with points of `P^n`
//! through the fixed chart `c_0 x^n + c_1 x^{n-1} y + ... + c_n y^n`. A map
//! `f` of `P^1` then induces a map `F` of `P^n` of the same degree, sending
//! the form with roots `P_1..P_n` to the form with roots `f(P_1)..f(P_n)`.

mod period;

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::coeff::{seeded_rng, Scalar};
use crate::dynamics::{Endomorphism, ProjectivePoint};
use crate::error::{Error, Result};
use crate::mpoly::{squarefree_part, Monomial, Polynomial};
use crate::resultant::{discriminant_binary, sylvester_resultant};

pub use period::{
    bicritical_wanderer, find_pcf_parameter, period_polynomial, primitive_root_of_unity, unicritical_inverse_map,
    PcfParameter, PeriodPolynomial,
};

/// A binary form of degree `n`, as its coefficient vector `(c_0, ..., c_n)`
/// in the chart above, normalized up to scalars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymForm<K: Scalar> {
    coeffs: Vec<K>,
}

impl<K: Scalar> SymForm<K> {
    pub fn new(coeffs: Vec<K>) -> Result<Self> {
        let u = K::normalizing_unit(coeffs.iter()).ok_or(Error::ZeroPolynomial)?;
        let inv = u.inv().unwrap();
        Ok(SymForm { coeffs: coeffs.into_iter().map(|c| c * inv.clone()).collect() })
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The form in variables `x0, x1`.
    pub fn to_binary_form(&self) -> Polynomial<K> {
        let n = self.degree() as u32;
        let field = self.coeffs[0].field();
        Polynomial::from_terms(
            2,
            field,
            self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::new(&[n - i as u32, i as u32]), c.clone())),
        )
    }

    /// Reads a binary form of degree `n` in `x0, x1`.
    pub fn from_binary_form(p: &Polynomial<K>, n: usize) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(Error::Arity { expected: 2, got: p.nvars() });
        }
        let mut coeffs = vec![K::zero_in(p.field()); n + 1];
        for (m, c) in p.terms() {
            if m.degree() as usize != n {
                return Err(Error::NotHomogeneous(format!("binary form of degree {n}")));
            }
            coeffs[m.exps()[1] as usize] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn to_point(&self) -> ProjectivePoint<K> {
        ProjectivePoint::new(self.coeffs.clone()).expect("nonzero form")
    }

    pub fn from_point(p: &ProjectivePoint<K>) -> Self {
        Self::new(p.coords().to_vec()).expect("nonzero point")
    }
}

impl<K: Scalar> fmt::Display for SymForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_binary_form().fmt(f)
    }
}

fn check_line_point<K: Scalar>(p: &ProjectivePoint<K>) -> Result<()> {
    if p.dim() != 1 {
        return Err(Error::Arity { expected: 2, got: p.coords().len() });
    }
    Ok(())
}

/// `prod (b_i x - a_i y)` over the points `(a_i : b_i)`.
pub fn vieta<K: Scalar>(points: &[ProjectivePoint<K>]) -> Result<SymForm<K>> {
    let first = points.first().ok_or_else(|| Error::InvalidInput("vieta needs at least one point".into()))?;
    let field = first.coords()[0].field();
    let mut acc = Polynomial::one(2, field.clone());
    for p in points {
        check_line_point(p)?;
        let (a, b) = (&p.coords()[0], &p.coords()[1]);
        let lin = Polynomial::from_terms(
            2,
            field.clone(),
            [(Monomial::new(&[1, 0]), b.clone()), (Monomial::new(&[0, 1]), -a.clone())],
        );
        acc = &acc * &lin;
    }
    SymForm::from_binary_form(&acc, points.len())
}

fn require_line_map<K: Scalar>(f: &Endomorphism<K>) -> Result<()> {
    if f.n() != 1 || f.nparams() > 0 {
        return Err(Error::InvalidInput("expected a map of the projective line without parameters".into()));
    }
    Ok(())
}

/// The `n`-th symmetric power of a map of `P^1`, from
/// `Res_{x,y}(Phi_c(x, y), v f_0(x, y) - u f_1(x, y))` with generic
/// coefficients `c`: its coefficient of `u^{n-i} v^i` is the `i`-th
/// component.
pub fn symmetric_power<K: Scalar>(f: &Endomorphism<K>, n: usize) -> Result<Endomorphism<K>> {
    require_line_map(f)?;
    if n == 0 {
        return Err(Error::InvalidInput("symmetric power needs n >= 1".into()));
    }
    let field = f.field().clone();
    // variables: x, y, u, v, c_0..c_n
    let nv = 4 + n + 1;
    let phi = Polynomial::from_terms(
        nv,
        field.clone(),
        (0..=n).map(|i| {
            let mut e = vec![0u32; nv];
            e[0] = (n - i) as u32;
            e[1] = i as u32;
            e[4 + i] = 1;
            (Monomial::new(&e), K::one_in(&field))
        }),
    );
    let lift: Vec<usize> = vec![0, 1];
    let f0 = f.forms()[0].remap(nv, &lift);
    let f1 = f.forms()[1].remap(nv, &lift);
    let u = Polynomial::var(nv, field.clone(), 2);
    let v = Polynomial::var(nv, field.clone(), 3);
    let g = &(&v * &f0) - &(&u * &f1);
    let res = sylvester_resultant(&phi, &g)?;
    let parts = res.split_main(2);
    let forms: Vec<Polynomial<K>> = (0..=n)
        .map(|i| {
            parts
                .get(&Monomial::new(&[(n - i) as u32, i as u32]))
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(n + 1, field.clone()))
        })
        .collect();
    let unit = K::normalizing_unit(forms.iter().flat_map(|p| p.terms().rev().map(|(_, c)| c)))
        .ok_or(Error::ZeroPolynomial)?;
    let inv = unit.inv().unwrap();
    Endomorphism::new(forms.iter().map(|p| p.scale(&inv)).collect())
}

/// The linear form `c -> Phi_c(P)` on degree-`m` binary forms: the
/// coefficients are the degree-`m` monomials in the coordinates of `P`.
pub fn hyperplane_of_point<K: Scalar>(p: &ProjectivePoint<K>, m: usize) -> Result<Polynomial<K>> {
    check_line_point(p)?;
    let (a, b) = (&p.coords()[0], &p.coords()[1]);
    let field = a.field();
    Ok(Polynomial::from_terms(
        m + 1,
        field,
        (0..=m).map(|i| (Monomial::var(m + 1, i, 1), a.pow((m - i) as u64) * b.pow(i as u64))),
    ))
}

/// A random nonzero coefficient vector on the hyperplane `h`.
fn sample_on_hyperplane<K: Scalar, R: Rng>(h: &Polynomial<K>, rng: &mut R) -> Vec<K> {
    let field = h.field().clone();
    let m1 = h.nvars();
    let weights: Vec<K> = (0..m1).map(|i| h.coeff(&Monomial::var(m1, i, 1))).collect();
    let pivot = weights.iter().position(|w| !w.is_zero()).expect("nonzero hyperplane");
    loop {
        let mut c: Vec<K> = (0..m1).map(|_| K::random(&field, rng)).collect();
        let rest = (0..m1)
            .filter(|&i| i != pivot)
            .fold(K::zero_in(&field), |acc, i| acc + weights[i].clone() * c[i].clone());
        c[pivot] = -(rest / weights[pivot].clone());
        if c.iter().any(|x| !x.is_zero()) {
            return c;
        }
    }
}

fn eval_map<K: Scalar>(big: &Endomorphism<K>, c: &[K]) -> Result<Vec<K>> {
    big.forms().iter().map(|g| g.evaluate(c)).collect()
}

/// Whether `F` maps sampled points of `H_P` into `H_{f(P)}`.
pub fn check_fhp<K: Scalar>(
    f: &Endomorphism<K>,
    big: &Endomorphism<K>,
    p: &ProjectivePoint<K>,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    require_line_map(f)?;
    let m = big.n();
    let h = hyperplane_of_point(p, m)?;
    let h_image = hyperplane_of_point(&f.apply(p)?, m)?;
    let ok: Vec<bool> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(seed.wrapping_add(i as u64));
            let c = sample_on_hyperplane(&h, &mut rng);
            let image = eval_map(big, &c)?;
            if image.iter().all(|x| x.is_zero()) {
                return Ok(false);
            }
            Ok(h_image.evaluate(&image)?.is_zero())
        })
        .collect::<Result<_>>()?;
    Ok(ok.into_iter().all(|b| b))
}

/// Whether two distinct points of the tuple have the same image.
pub fn collision_locus_member<K: Scalar>(f: &Endomorphism<K>, points: &[ProjectivePoint<K>]) -> Result<bool> {
    require_line_map(f)?;
    let images = points.iter().map(|p| f.apply(p)).collect::<Result<Vec<_>>>()?;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] != points[j] && images[i] == images[j] {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Critical points of a map of `P^1`, all of which must lie in the field.
pub fn critical_points<K: Scalar>(f: &Endomorphism<K>) -> Result<Vec<ProjectivePoint<K>>> {
    require_line_map(f)?;
    let j = f.jacobian_determinant()?;
    if j.is_zero() {
        return Err(Error::ZeroJacobian);
    }
    let pts = crate::dynamics::binary_roots(&j);
    let split = match vieta(&pts) {
        Ok(phi) => phi.to_binary_form().equal_up_to_scalar(&squarefree_part(&j)?),
        Err(_) => false,
    };
    if !split {
        return Err(Error::Unsupported("critical points are not all defined over the field".into()));
    }
    Ok(pts)
}

/// Outcome of [`critical_locus_structure_check`], one flag per sub-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalLocusReport {
    /// `J_F` vanishes on sampled points of `H_P` for critical `P`.
    pub hyperplanes: bool,
    /// `J_F` vanishes on forms whose roots contain a collision pair.
    pub collisions: bool,
    /// `J_F` does not vanish on forms outside both classes.
    pub complement: bool,
    /// `F` maps collision forms to forms with a repeated root.
    pub discriminant: bool,
    pub samples: usize,
}

impl CriticalLocusReport {
    pub fn all_passed(&self) -> bool {
        self.hyperplanes && self.collisions && self.complement && self.discriminant
    }
}

fn random_line_point<K: Scalar, R: Rng>(field: &K::Field, rng: &mut R) -> ProjectivePoint<K> {
    ProjectivePoint::affine(field, K::random(field, rng))
}

/// A point `Q != P` with `f(Q) = f(P)`, if the fibre has one in the field.
fn collision_partner<K: Scalar>(f: &Endomorphism<K>, p: &ProjectivePoint<K>) -> Result<Option<ProjectivePoint<K>>> {
    let q = f.apply(p)?;
    let (u, v) = (q.coords()[0].clone(), q.coords()[1].clone());
    let fibre = &f.forms()[0].scale(&v) - &f.forms()[1].scale(&u);
    Ok(crate::dynamics::binary_roots(&fibre).into_iter().find(|r| r != p))
}

/// Samples the decomposition of the critical locus of `F = s_n(f)` into
/// the hyperplanes `H_P` over critical points `P` and the collision locus.
pub fn critical_locus_structure_check<K: Scalar>(
    f: &Endomorphism<K>,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<CriticalLocusReport> {
    if n < 2 {
        return Err(Error::InvalidInput("the structure check needs n >= 2".into()));
    }
    let field = f.field().clone();
    let crit = critical_points(f)?;
    let big = symmetric_power(f, n)?;
    let jac = big.jacobian_determinant()?;
    let checks: Vec<(bool, bool, bool, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(seed.wrapping_add(i as u64));
            let h = hyperplane_of_point(&crit[i % crit.len()], n)?;
            let on_h = jac.evaluate(&sample_on_hyperplane(&h, &mut rng))?.is_zero();

            let (mut collision, mut disc) = (false, false);
            for _ in 0..200 {
                let p1 = random_line_point(&field, &mut rng);
                let Some(p2) = collision_partner(f, &p1)? else { continue };
                let mut tuple = vec![p1, p2];
                tuple.extend((2..n).map(|_| random_line_point(&field, &mut rng)));
                let phi = vieta(&tuple)?;
                collision = jac.evaluate(phi.coeffs())?.is_zero();
                let image = SymForm::new(eval_map(&big, phi.coeffs())?)?;
                disc = discriminant_binary(&image.to_binary_form())?.is_zero();
                break;
            }

            let mut generic = false;
            for _ in 0..200 {
                let tuple: Vec<ProjectivePoint<K>> = (0..n).map(|_| random_line_point(&field, &mut rng)).collect();
                let images = tuple.iter().map(|p| f.apply(p)).collect::<Result<Vec<_>>>()?;
                let distinct = (0..n).all(|a| (a + 1..n).all(|b| tuple[a] != tuple[b] && images[a] != images[b]));
                if !distinct || tuple.iter().any(|p| crit.contains(p)) {
                    continue;
                }
                generic = !jac.evaluate(vieta(&tuple)?.coeffs())?.is_zero();
                break;
            }
            Ok((on_h, collision, generic, disc))
        })
        .collect::<Result<_>>()?;
    Ok(CriticalLocusReport {
        hyperplanes: checks.iter().all(|c| c.0),
        collisions: checks.iter().all(|c| c.1),
        complement: checks.iter().all(|c| c.2),
        discriminant: checks.iter().all(|c| c.3),
        samples,
    })
}

/// `{t >= 1 : t | m s for some 1 <= m <= n}`.
pub fn admissible_periods(s: u64, n: u64) -> Result<BTreeSet<u64>> {
    if s == 0 || n == 0 {
        return Err(Error::InvalidInput("admissible_periods needs s, n >= 1".into()));
    }
    let mut out = BTreeSet::new();
    for m in 1..=n {
        let k = m * s;
        out.extend((1..=k).filter(|t| k % t == 0));
    }
    Ok(out)
}

/// `eta(P, f^s(P), ..., f^{(m-1)s}(P), Q, ..., Q)` for a critical point `P`
/// with `f^{ms}(P) = P` and a fixed point `Q`: a critical point of
/// `F = s_n(f)` of period dividing `s`. Both properties are checked exactly
/// before returning.
pub fn periodic_critical_form<K: Scalar>(
    f: &Endomorphism<K>,
    p: &ProjectivePoint<K>,
    q: &ProjectivePoint<K>,
    s: u32,
    m: usize,
    n: usize,
) -> Result<SymForm<K>> {
    require_line_map(f)?;
    if s == 0 || m == 0 || m > n {
        return Err(Error::Precondition(format!("need s >= 1 and 1 <= m <= n, got s = {s}, m = {m}, n = {n}")));
    }
    if !f.jacobian_determinant()?.evaluate(p.coords())?.is_zero() {
        return Err(Error::Precondition(format!("{p} is not a critical point")));
    }
    if f.apply(q)? != *q {
        return Err(Error::Precondition(format!("{q} is not fixed")));
    }
    let fs = f.iterate(s)?;
    let mut tuple = vec![p.clone()];
    for _ in 1..m {
        tuple.push(fs.apply(tuple.last().unwrap())?);
    }
    if fs.apply(tuple.last().unwrap())? != *p {
        return Err(Error::Precondition(format!("{p} does not have period dividing {}", m as u32 * s)));
    }
    tuple.extend((m..n).map(|_| q.clone()));
    let phi = vieta(&tuple)?;
    let big = symmetric_power(f, n)?;
    if !big.jacobian_determinant()?.evaluate(phi.coeffs())?.is_zero() {
        return Err(Error::Verification("J_F does not vanish at the constructed form".into()));
    }
    let mut image = phi.to_point();
    for _ in 0..s {
        image = big.apply(&image)?;
    }
    if image != phi.to_point() {
        return Err(Error::Verification("the constructed form is not periodic under F".into()));
    }
    Ok(phi)
}

#[cfg(test)]
mod tests;
