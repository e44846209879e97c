//! Periodic points and periodic critical points.

use std::fmt;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::mpoly::{gcd, univariate_roots, Monomial, Polynomial};
use crate::resultant::sylvester_resultant;

use super::{Endomorphism, HypersurfaceForm, ProjectivePoint};

/// Where a search for points looked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchScope {
    /// Roots of a binary form that lie in the coefficient field.
    FieldRoots,
    /// Every point of `P^n(F_p)`.
    Exhaustive { p: u64 },
    /// Over the algebraic closure, by a resultant.
    AlgebraicClosure,
}

impl fmt::Display for SearchScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchScope::FieldRoots => write!(f, "roots in the coefficient field"),
            SearchScope::Exhaustive { p } => write!(f, "exhaustive over F_{p}"),
            SearchScope::AlgebraicClosure => write!(f, "algebraic closure"),
        }
    }
}

/// `x_0 f^s_1 - x_1 f^s_0` for a map of the projective line; its zeros are
/// the points of period dividing `s`.
pub fn fixed_form<K: Scalar>(f: &Endomorphism<K>, s: u32) -> Result<HypersurfaceForm<K>> {
    if f.n() != 1 {
        return Err(Error::Unsupported("fixed_form is defined for maps of the projective line".into()));
    }
    let g = f.iterate(s)?;
    let nv = f.nvars();
    let field = f.field().clone();
    let x0 = Polynomial::var(nv, field.clone(), 0);
    let x1 = Polynomial::var(nv, field, 1);
    let phi = &(&x0 * &g.forms()[1]) - &(&x1 * &g.forms()[0]);
    HypersurfaceForm::with_params(phi, 2)
}

/// Points of `P^1` at which a binary form without parameters vanishes, within the field.
pub fn binary_roots<K: Scalar>(p: &Polynomial<K>) -> Vec<ProjectivePoint<K>> {
    let field = p.field().clone();
    let deg = p.degree().unwrap_or(0);
    let mut coeffs = vec![K::zero_in(&field); deg as usize + 1];
    for (m, c) in p.terms() {
        coeffs[m.exps()[0] as usize] = c.clone();
    }
    let mut out: Vec<ProjectivePoint<K>> =
        univariate_roots(&coeffs, &field).into_iter().map(|t| ProjectivePoint::affine(&field, t)).collect();
    if p.coeff(&Monomial::new(&[deg, 0])).is_zero() {
        out.push(ProjectivePoint::infinity(&field));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPoints<K: Scalar> {
    pub points: Vec<ProjectivePoint<K>>,
    pub scope: SearchScope,
}

/// Points with `f^s(P) = P`: roots of the fixed form for `n = 1` over the
/// rationals, an exhaustive scan over a prime field.
pub fn periodic_points<K: Scalar>(f: &Endomorphism<K>, s: u32) -> Result<PeriodicPoints<K>> {
    if f.nparams() > 0 {
        return Err(Error::Unsupported("periodic points of a map with parameters".into()));
    }
    let p = K::characteristic(f.field());
    if p == 0 {
        if f.n() != 1 {
            return Err(Error::Unsupported("periodic points over QQ are implemented for n = 1".into()));
        }
        let phi = fixed_form(f, s)?;
        return Ok(PeriodicPoints { points: binary_roots(phi.form()), scope: SearchScope::FieldRoots });
    }
    let g = f.iterate(s)?;
    let mut points = Vec::new();
    for pt in ProjectivePoint::enumerate(f.field(), f.n())? {
        match g.apply(&pt) {
            Ok(q) if q == pt => points.push(pt),
            Ok(_) | Err(Error::BasePoint) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(PeriodicPoints { points, scope: SearchScope::Exhaustive { p } })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCriticalVerdict<K: Scalar> {
    pub value: bool,
    pub scope: SearchScope,
    /// A critical point of period dividing `s`, when one lies in the field.
    pub witness: Option<ProjectivePoint<K>>,
}

/// Whether some critical point has period dividing `s`. Exact over the
/// algebraic closure for `n = 1` (`Res(J_f, Phi_s) = 0`); for `n >= 2` only
/// an exhaustive scan over a prime field is available.
pub fn has_periodic_critical_point<K: Scalar>(f: &Endomorphism<K>, s: u32) -> Result<PeriodicCriticalVerdict<K>> {
    if f.nparams() > 0 {
        return Err(Error::Unsupported("periodic critical points of a map with parameters".into()));
    }
    let j = f.jacobian_determinant()?;
    if j.is_zero() {
        return Err(Error::ZeroJacobian);
    }
    if f.n() == 1 {
        let phi = fixed_form(f, s)?;
        let res = sylvester_resultant(&j, phi.form())?;
        let value = res.is_zero();
        let witness = if value { binary_roots(&gcd(&j, phi.form())).into_iter().next() } else { None };
        return Ok(PeriodicCriticalVerdict { value, scope: SearchScope::AlgebraicClosure, witness });
    }
    let p = K::characteristic(f.field());
    if p == 0 {
        return Err(Error::Unsupported("periodic critical points over QQ need n = 1".into()));
    }
    let g = f.iterate(s)?;
    for pt in ProjectivePoint::enumerate(f.field(), f.n())? {
        if j.evaluate(pt.coords())?.is_zero() && g.apply(&pt).map(|q| q == pt).unwrap_or(false) {
            return Ok(PeriodicCriticalVerdict { value: true, scope: SearchScope::Exhaustive { p }, witness: Some(pt) });
        }
    }
    Ok(PeriodicCriticalVerdict { value: false, scope: SearchScope::Exhaustive { p }, witness: None })
}
