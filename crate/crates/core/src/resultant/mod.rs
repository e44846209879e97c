//! Resultants: Sylvester for binary forms, Macaulay for `n + 1` forms in
//! `n + 1` variables, discriminants and gradient resultants.
//!
//! Forms live in a ring whose leading `nmain` variables are eliminated; any
//! remaining variables are parameters, and resultants are returned as
//! polynomials in them (a ring with zero variables when there are none).
//! The normalization is `Res(x_0^{d_0}, ..., x_n^{d_n}) = 1`.

mod modular;
mod plan;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::coeff::{seeded_rng, Scalar};
use crate::error::{Error, Result};
use crate::mpoly::{
    det_scalar, determinant, div_exact, Monomial, PolyMatrix, Polynomial,
};

pub use plan::MacaulayPlan;

/// Which algorithm computes a resultant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Ratio for numeric systems, interpolation for parametric ones.
    #[default]
    Auto,
    /// `det M / det M'` with polynomial entries.
    Ratio,
    /// Evaluation at parameter points and interpolation.
    Modular,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "ratio" => Ok(Strategy::Ratio),
            "modular" => Ok(Strategy::Modular),
            _ => Err(Error::InvalidInput(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResultantStrategy {
    pub strategy: Strategy,
    /// Allow coordinate changes and interpolation when `det M' = 0`.
    pub fallback: bool,
    pub seed: u64,
}

impl Default for ResultantStrategy {
    fn default() -> Self {
        ResultantStrategy { strategy: Strategy::Auto, fallback: true, seed: 0 }
    }
}

impl ResultantStrategy {
    pub fn with_seed(seed: u64) -> Self {
        ResultantStrategy { seed, ..Default::default() }
    }
}

/// How a resultant value was actually obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultantMode {
    DirectRatio,
    CoordinateChange,
    ModularInterpolation,
}

impl fmt::Display for ResultantMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResultantMode::DirectRatio => "direct-ratio",
            ResultantMode::CoordinateChange => "coordinate-change-fallback",
            ResultantMode::ModularInterpolation => "modular-interpolation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultantOutcome<K: Scalar> {
    /// Polynomial in the parameters.
    pub value: Polynomial<K>,
    pub mode: ResultantMode,
}

/// `n + 1` forms, homogeneous in the leading `n + 1` variables.
#[derive(Debug, Clone)]
pub struct MacaulaySystem<K: Scalar> {
    forms: Vec<Polynomial<K>>,
    nmain: usize,
    degrees: Vec<u32>,
    groups: Vec<Vec<usize>>,
}

impl<K: Scalar> MacaulaySystem<K> {
    /// A system without parameters.
    pub fn new(forms: Vec<Polynomial<K>>) -> Result<Self> {
        let n = forms.len();
        Self::with_params(forms, n)
    }

    /// Parameters are the variables after the first `nmain`, in one group.
    pub fn with_params(forms: Vec<Polynomial<K>>, nmain: usize) -> Result<Self> {
        let nv = forms.first().map_or(0, |f| f.nvars());
        let group: Vec<usize> = (0..nv.saturating_sub(nmain)).collect();
        let groups = if group.is_empty() { vec![] } else { vec![group] };
        Self::with_param_groups(forms, nmain, groups)
    }

    /// Parameter groups partition `0..nparams`; interpolation bounds the
    /// degree separately in each group.
    pub fn with_param_groups(
        forms: Vec<Polynomial<K>>,
        nmain: usize,
        groups: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if forms.len() != nmain || nmain == 0 {
            return Err(Error::Arity { expected: nmain, got: forms.len() });
        }
        for f in &forms[1..] {
            forms[0].check_ring(f)?;
        }
        let nv = forms[0].nvars();
        if nv < nmain {
            return Err(Error::InvalidInput("fewer variables than forms".into()));
        }
        let main: Vec<usize> = (0..nmain).collect();
        let mut degrees = Vec::with_capacity(nmain);
        for (i, f) in forms.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if !f.is_homogeneous_in(&main) {
                return Err(Error::NotHomogeneous(format!("form {i} in the eliminated variables")));
            }
            let d = f.terms().next().unwrap().0.degree_in(&main);
            if d == 0 {
                return Err(Error::InvalidInput(format!("form {i} has degree 0")));
            }
            degrees.push(d);
        }
        let np = nv - nmain;
        let mut seen = vec![false; np];
        for g in &groups {
            for &v in g {
                if v >= np || seen[v] {
                    return Err(Error::InvalidInput("parameter groups must partition the parameters".into()));
                }
                seen[v] = true;
            }
        }
        if seen.contains(&false) {
            return Err(Error::InvalidInput("parameter groups must cover the parameters".into()));
        }
        Ok(MacaulaySystem { forms, nmain, degrees, groups })
    }

    pub fn forms(&self) -> &[Polynomial<K>] {
        &self.forms
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn nmain(&self) -> usize {
        self.nmain
    }

    pub fn nparams(&self) -> usize {
        self.forms[0].nvars() - self.nmain
    }

    pub fn field(&self) -> &K::Field {
        self.forms[0].field()
    }

    pub fn critical_degree(&self) -> u32 {
        self.degrees.iter().map(|d| d - 1).sum::<u32>() + 1
    }

    /// Per group: variables, degree bound of the resultant, and whether all
    /// forms are homogeneous in the group (then the bound is exact).
    pub fn group_bounds(&self) -> Vec<(Vec<usize>, u32, bool)> {
        let prod: u64 = self.degrees.iter().map(|&d| d as u64).product();
        self.groups
            .iter()
            .map(|g| {
                let full: Vec<usize> = g.iter().map(|v| v + self.nmain).collect();
                let bound: u64 = self
                    .forms
                    .iter()
                    .zip(&self.degrees)
                    .map(|(f, &d)| f.degree_in_block(&full) as u64 * (prod / d as u64))
                    .sum();
                let homogeneous = self.forms.iter().all(|f| f.is_homogeneous_in(&full));
                (g.clone(), bound as u32, homogeneous)
            })
            .collect()
    }

    pub(crate) fn with_forms<L: Scalar>(&self, forms: Vec<Polynomial<L>>) -> MacaulaySystem<L> {
        MacaulaySystem {
            forms,
            nmain: self.nmain,
            degrees: self.degrees.clone(),
            groups: self.groups.clone(),
        }
    }
}

/// The Macaulay resultant of the system.
pub fn macaulay_resultant<K: Scalar>(
    sys: &MacaulaySystem<K>,
    strategy: ResultantStrategy,
) -> Result<ResultantOutcome<K>> {
    let plan = MacaulayPlan::new(sys.degrees())?;
    let field = sys.field().clone();
    let np = sys.nparams();
    let use_ratio = match strategy.strategy {
        Strategy::Auto => np == 0,
        Strategy::Ratio => true,
        Strategy::Modular => false,
    };
    if np == 0 && use_ratio {
        let dense = plan.dense(sys.forms())?;
        let (v, mode) = plan.resultant(&dense, &field, strategy.seed, strategy.fallback)?;
        return Ok(ResultantOutcome { value: Polynomial::constant(0, v), mode });
    }
    if use_ratio {
        match ratio_parametric(sys, &plan, strategy.seed) {
            Ok((value, mode)) => return Ok(ResultantOutcome { value, mode }),
            Err(e) if !strategy.fallback || !matches!(e, Error::DegenerateMinor(_)) => return Err(e),
            Err(_) => {}
        }
    }
    let value = modular::modular_resultant(sys, &plan, strategy.seed)?;
    Ok(ResultantOutcome { value, mode: ResultantMode::ModularInterpolation })
}

/// `det M / det M'` with entries in the parameter ring, retrying under
/// random coordinate changes of the eliminated variables.
fn ratio_parametric<K: Scalar>(
    sys: &MacaulaySystem<K>,
    plan: &MacaulayPlan,
    seed: u64,
) -> Result<(Polynomial<K>, ResultantMode)> {
    let field = sys.field().clone();
    let nmain = sys.nmain();
    let np = sys.nparams();
    let total: u64 = sys.degrees().iter().map(|&d| d as u64).product();
    let mut rng = seeded_rng(seed);
    let mut forms = sys.forms().to_vec();
    let mut correction = K::one_in(&field);
    for attempt in 0..6 {
        if attempt > 0 {
            let a: Vec<Vec<K>> = (0..nmain)
                .map(|_| (0..nmain).map(|_| K::from_i64(&field, rng.gen_range(-9..=9))).collect())
                .collect();
            let det_a = det_scalar(a.clone(), &field);
            if det_a.is_zero() {
                continue;
            }
            let nv = nmain + np;
            let mut images: Vec<Polynomial<K>> = (0..nv).map(|v| Polynomial::var(nv, field.clone(), v)).collect();
            for (i, row) in a.iter().enumerate() {
                images[i] = Polynomial::from_terms(
                    nv,
                    field.clone(),
                    row.iter().enumerate().map(|(j, c)| (Monomial::var(nv, j, 1), c.clone())),
                );
            }
            forms = sys.forms().iter().map(|f| f.substitute(&images)).collect::<Result<_>>()?;
            correction = det_a.pow(total);
        }
        let m = polynomial_macaulay_matrix(&forms, nmain, plan, &field);
        let minor_idx = plan.minor_indices();
        let sub: Vec<Vec<Polynomial<K>>> = minor_idx
            .iter()
            .map(|&r| minor_idx.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        let den = if sub.is_empty() {
            Polynomial::one(np, field.clone())
        } else {
            determinant(&PolyMatrix::new(sub)?)?
        };
        if den.is_zero() {
            continue;
        }
        let num = determinant(&PolyMatrix::new(m)?)?;
        let q = div_exact(&num, &den)
            .ok_or_else(|| Error::Verification("det M' does not divide det M".into()))?;
        let mode = if attempt == 0 { ResultantMode::DirectRatio } else { ResultantMode::CoordinateChange };
        return Ok((q.scale(&correction.inv().unwrap()), mode));
    }
    Err(Error::DegenerateMinor("det M' vanishes identically under 5 coordinate changes".into()))
}

fn polynomial_macaulay_matrix<K: Scalar>(
    forms: &[Polynomial<K>],
    nmain: usize,
    plan: &MacaulayPlan,
    field: &K::Field,
) -> Vec<Vec<Polynomial<K>>> {
    let np = forms[0].nvars() - nmain;
    // coefficient of each main monomial, as a polynomial in the parameters
    let dense: Vec<Vec<Polynomial<K>>> = forms
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut v = vec![Polynomial::zero(np, field.clone()); plan.form_monomials(i).len()];
            for (main, coeff) in f.split_main(nmain) {
                if let Some(k) = plan.form_position(i, &main) {
                    v[k] = coeff;
                }
            }
            v
        })
        .collect();
    let n = plan.size();
    let mut m = vec![vec![Polynomial::zero(np, field.clone()); n]; n];
    for (r, (i, targets)) in plan.row_layout().iter().enumerate() {
        for (k, &c) in targets.iter().enumerate() {
            m[r][c] = dense[*i][k].clone();
        }
    }
    m
}

/// Splits binary forms in `x0, x1` (the leading two variables) into
/// coefficient lists `p_0, ..., p_a` of `x0^{a-i} x1^i`.
fn binary_coefficients<K: Scalar>(p: &Polynomial<K>) -> Result<Vec<Polynomial<K>>> {
    if p.nvars() < 2 {
        return Err(Error::InvalidInput("binary forms need at least two variables".into()));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_homogeneous_in(&[0, 1]) {
        return Err(Error::NotHomogeneous("binary form in x0, x1".into()));
    }
    let parts = p.split_main(2);
    let a = parts.keys().next().unwrap().degree();
    let np = p.nvars() - 2;
    Ok((0..=a)
        .map(|i| {
            parts
                .get(&Monomial::new(&[a - i, i]))
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(np, p.field().clone()))
        })
        .collect())
}

/// Sylvester resultant of two binary forms in `x0, x1`; further variables
/// are parameters of the result.
pub fn sylvester_resultant<K: Scalar>(p: &Polynomial<K>, q: &Polynomial<K>) -> Result<Polynomial<K>> {
    p.check_ring(q)?;
    let pc = binary_coefficients(p)?;
    let qc = binary_coefficients(q)?;
    let (a, b) = (pc.len() - 1, qc.len() - 1);
    let n = a + b;
    let np = p.nvars() - 2;
    let field = p.field().clone();
    if n == 0 {
        return Ok(Polynomial::one(np, field));
    }
    let zero = Polynomial::zero(np, field.clone());
    let mut rows = vec![vec![zero; n]; n];
    for r in 0..b {
        for (i, c) in pc.iter().enumerate() {
            rows[r][r + i] = c.clone();
        }
    }
    for r in 0..a {
        for (i, c) in qc.iter().enumerate() {
            rows[b + r][r + i] = c.clone();
        }
    }
    if np == 0 {
        let scalars: Vec<Vec<K>> = rows
            .iter()
            .map(|row| row.iter().map(|e| e.constant_value().unwrap()).collect())
            .collect();
        return Ok(Polynomial::constant(0, det_scalar(scalars, &field)));
    }
    determinant(&PolyMatrix::new(rows)?)
}

/// Discriminant of a binary form of degree `m >= 2`, normalized as
/// `(-1)^{m(m-1)/2} Res(dF/dx0, dF/dx1) / m^{m-2}`. This gives `b^2 - 4ac`
/// for `a x0^2 + b x0 x1 + c x1^2` and `-4p^3 - 27q^2` for `x0^3 + p x0 x1^2 + q x1^3`.
pub fn discriminant_binary<K: Scalar>(phi: &Polynomial<K>) -> Result<Polynomial<K>> {
    let m = binary_coefficients(phi)?.len() as u64 - 1;
    if m < 2 {
        return Err(Error::Precondition(format!("discriminant needs degree at least 2, got {m}")));
    }
    let field = phi.field().clone();
    let d0 = phi.partial_derivative(0)?;
    let d1 = phi.partial_derivative(1)?;
    let np = phi.nvars() - 2;
    if d0.is_zero() || d1.is_zero() {
        return Ok(Polynomial::zero(np, field));
    }
    let r = sylvester_resultant(&d0, &d1)?;
    let scale = K::from_i64(&field, m as i64).pow(m - 2);
    let inv = scale
        .inv()
        .ok_or_else(|| Error::Unsupported(format!("discriminant of degree {m} in this characteristic")))?;
    let sign = if (m * (m - 1) / 2) % 2 == 1 { -inv } else { inv };
    Ok(r.scale(&sign))
}

/// Macaulay resultant of the partial derivatives in the leading `nmain`
/// variables; zero when some partial vanishes identically.
pub fn gradient_resultant<K: Scalar>(
    p: &Polynomial<K>,
    nmain: usize,
    strategy: ResultantStrategy,
) -> Result<ResultantOutcome<K>> {
    let partials: Vec<Polynomial<K>> =
        (0..nmain).map(|v| p.partial_derivative(v)).collect::<Result<_>>()?;
    if partials.iter().any(|d| d.is_zero()) {
        return Ok(ResultantOutcome {
            value: Polynomial::zero(p.nvars() - nmain, p.field().clone()),
            mode: ResultantMode::DirectRatio,
        });
    }
    macaulay_resultant(&MacaulaySystem::with_params(partials, nmain)?, strategy)
}

/// Resultant of an endomorphism's coordinate forms (in its parameters, if any).
pub fn map_resultant<K: Scalar>(
    f: &crate::dynamics::Endomorphism<K>,
    strategy: ResultantStrategy,
) -> Result<ResultantOutcome<K>> {
    let sys = MacaulaySystem::with_params(f.forms().to_vec(), f.n() + 1)?;
    macaulay_resultant(&sys, strategy)
}

#[cfg(test)]
mod tests;
