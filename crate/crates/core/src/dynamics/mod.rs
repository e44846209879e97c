//! Endomorphisms of projective space and their dynamics.
//!
//! A map `f = (f_0 : ... : f_n)` is stored as `n + 1` forms of a common
//! degree `d` in the leading `n + 1` variables of a ring. Extra trailing
//! variables are parameters (symbolic coefficients); operations that need
//! numbers, such as [`Endomorphism::apply`], require a parameter-free map.

mod formulas;
mod image;
mod periodic;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::coeff::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::mpoly::{parse_poly, Monomial, PolyMatrix, Polynomial};
use crate::resultant::{map_resultant, ResultantStrategy};

pub use formulas::{dim_end, dim_forms, generic_cert_degree};
pub use image::{
    improper_certificate, pushforward, pushforward_chain, pushforward_detailed, search_improper_witness,
    Pushforward, WitnessSearch,
};
pub use periodic::{
    binary_roots, fixed_form, has_periodic_critical_point, periodic_points, PeriodicCriticalVerdict, PeriodicPoints,
    SearchScope,
};

/// Default bound on orbit length.
pub const DEFAULT_MAX_STEPS: usize = 64;

#[derive(Debug, Clone)]
pub struct Endomorphism<K: Scalar> {
    n: usize,
    d: u32,
    forms: Vec<Polynomial<K>>,
    morphism: OnceLock<bool>,
}

impl<K: Scalar> PartialEq for Endomorphism<K> {
    fn eq(&self, other: &Self) -> bool {
        self.forms == other.forms
    }
}

impl<K: Scalar> Eq for Endomorphism<K> {}

impl<K: Scalar> Endomorphism<K> {
    /// Forms in exactly `forms.len()` variables.
    pub fn new(forms: Vec<Polynomial<K>>) -> Result<Self> {
        let n = forms.len();
        Self::with_params(forms, n)
    }

    /// Forms whose leading `nmain` variables are coordinates; the rest are parameters.
    pub fn with_params(forms: Vec<Polynomial<K>>, nmain: usize) -> Result<Self> {
        if forms.len() != nmain || nmain < 2 {
            return Err(Error::Arity { expected: nmain.max(2), got: forms.len() });
        }
        for f in &forms[1..] {
            forms[0].check_ring(f)?;
        }
        if forms[0].nvars() < nmain {
            return Err(Error::InvalidInput("fewer variables than coordinates".into()));
        }
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        let main: Vec<usize> = (0..nmain).collect();
        let mut degree = None;
        for (i, f) in forms.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
            if !f.is_homogeneous_in(&main) {
                return Err(Error::NotHomogeneous(format!("component {i}")));
            }
            let di = f.terms().next().unwrap().0.degree_in(&main);
            match degree {
                None => degree = Some(di),
                Some(d) if d != di => {
                    return Err(Error::InvalidInput(format!("mixed degrees {d} and {di}")));
                }
                _ => {}
            }
        }
        let d = degree.unwrap();
        if d == 0 {
            return Err(Error::InvalidInput("degree 0 components".into()));
        }
        Ok(Endomorphism { n: nmain - 1, d, forms, morphism: OnceLock::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn forms(&self) -> &[Polynomial<K>] {
        &self.forms
    }

    pub fn field(&self) -> &K::Field {
        self.forms[0].field()
    }

    pub fn nvars(&self) -> usize {
        self.forms[0].nvars()
    }

    pub fn nparams(&self) -> usize {
        self.nvars() - self.n - 1
    }

    fn require_numeric(&self) -> Result<()> {
        if self.nparams() > 0 {
            return Err(Error::Unsupported("operation needs a map without parameters".into()));
        }
        Ok(())
    }

    /// The same map in a ring with `nvars` variables (parameters appended).
    pub fn extend_ring(&self, nvars: usize) -> Result<Self> {
        if nvars < self.nvars() {
            return Err(Error::RingMismatch(format!("cannot shrink {} variables to {nvars}", self.nvars())));
        }
        let map: Vec<usize> = (0..self.nvars()).collect();
        let forms = self.forms.iter().map(|f| f.remap(nvars, &map)).collect();
        Ok(Endomorphism { n: self.n, d: self.d, forms, morphism: self.morphism.clone() })
    }

    /// Whether the forms have no common zero, i.e. the resultant is nonzero
    /// (as a polynomial in the parameters, if any). Cached.
    pub fn is_morphism(&self) -> Result<bool> {
        if let Some(&m) = self.morphism.get() {
            return Ok(m);
        }
        let m = if self.forms.iter().any(|f| f.is_zero()) {
            false
        } else {
            !map_resultant(self, ResultantStrategy::default())?.value.is_zero()
        };
        Ok(*self.morphism.get_or_init(|| m))
    }

    pub(crate) fn require_morphism(&self) -> Result<()> {
        if self.is_morphism()? {
            Ok(())
        } else {
            Err(Error::NotMorphism)
        }
    }

    /// `g(f(x))`: substitutes the components of `self` into `g`.
    pub fn compose_after(&self, g: &Endomorphism<K>) -> Result<Self> {
        if g.n != self.n {
            return Err(Error::Arity { expected: self.n + 1, got: g.n + 1 });
        }
        self.forms[0].check_ring(&g.forms[0])?;
        let nv = self.nvars();
        let mut images = self.forms.clone();
        images.extend((self.n + 1..nv).map(|v| Polynomial::var(nv, self.field().clone(), v)));
        let forms = g.forms.iter().map(|h| h.substitute(&images)).collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism { n: self.n, d: self.d * g.d, forms: remove_common_content(forms), morphism: OnceLock::new() })
    }

    /// The `s`-th iterate by repeated substitution. The components are
    /// divided by their common scalar content only.
    pub fn iterate(&self, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidInput("iterate needs s >= 1".into()));
        }
        let mut out = self.clone();
        for _ in 1..s {
            out = out.compose_after(self)?;
        }
        if s > 1 {
            if let Some(&true) = self.morphism.get() {
                let _ = out.morphism.set(true);
            }
        }
        Ok(out)
    }

    /// Image of a point; fails at a base point.
    pub fn apply(&self, p: &ProjectivePoint<K>) -> Result<ProjectivePoint<K>> {
        self.require_numeric()?;
        if p.coords.len() != self.n + 1 {
            return Err(Error::Arity { expected: self.n + 1, got: p.coords.len() });
        }
        let coords = self.forms.iter().map(|f| f.evaluate(&p.coords)).collect::<Result<Vec<_>>>()?;
        ProjectivePoint::new(coords).map_err(|_| Error::BasePoint)
    }

    /// `P, f(P), f^2(P), ...` until the first repeat or `max_steps` applications.
    pub fn orbit(&self, p: &ProjectivePoint<K>, max_steps: usize) -> Result<OrbitRecord<K>> {
        let mut seen: HashMap<ProjectivePoint<K>, usize> = HashMap::new();
        let mut points = vec![p.clone()];
        seen.insert(p.clone(), 0);
        for k in 1..=max_steps {
            let next = self.apply(&points[k - 1])?;
            points.push(next.clone());
            if let Some(&t) = seen.get(&next) {
                return Ok(OrbitRecord { points, tail: Some(t), period: Some(k - t), max_steps });
            }
            seen.insert(next, k);
        }
        Ok(OrbitRecord { points, tail: None, period: None, max_steps })
    }

    /// `A f A^{-1}`, where the matrix `A` acts on coordinates.
    pub fn conjugate(&self, a: &[Vec<K>]) -> Result<Self> {
        let n1 = self.n + 1;
        if a.len() != n1 || a.iter().any(|r| r.len() != n1) {
            return Err(Error::Arity { expected: n1, got: a.len() });
        }
        let inv = invert(a, self.field())?;
        let nv = self.nvars();
        let field = self.field().clone();
        let linear = |m: &[Vec<K>]| -> Vec<Polynomial<K>> {
            let mut out: Vec<Polynomial<K>> = m
                .iter()
                .map(|row| {
                    Polynomial::from_terms(
                        nv,
                        field.clone(),
                        row.iter().enumerate().map(|(j, c)| (Monomial::var(nv, j, 1), c.clone())),
                    )
                })
                .collect();
            out.extend((n1..nv).map(|v| Polynomial::var(nv, field.clone(), v)));
            out
        };
        let pre = linear(&inv);
        let moved: Vec<Polynomial<K>> = self.forms.iter().map(|f| f.substitute(&pre)).collect::<Result<_>>()?;
        let forms = (0..n1)
            .map(|i| {
                let mut acc = Polynomial::zero(nv, field.clone());
                for (j, g) in moved.iter().enumerate() {
                    acc = &acc + &g.scale(&a[i][j]);
                }
                acc
            })
            .collect();
        Endomorphism::with_params(forms, n1)
    }

    /// `det(df_i / dx_j)` exactly as computed, without normalization.
    pub fn jacobian_determinant(&self) -> Result<Polynomial<K>> {
        let rows = self
            .forms
            .iter()
            .map(|f| (0..=self.n).map(|j| f.partial_derivative(j)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        crate::mpoly::determinant(&PolyMatrix::new(rows)?)
    }

    /// The critical locus as a hypersurface of degree `(n + 1)(d - 1)`.
    pub fn jacobian(&self) -> Result<HypersurfaceForm<K>> {
        let j = self.jacobian_determinant()?;
        if j.is_zero() {
            return Err(Error::ZeroJacobian);
        }
        HypersurfaceForm::with_params(j, self.n + 1)
    }

    pub fn to_spec(&self) -> Result<MapSpec> {
        self.require_numeric()?;
        Ok(MapSpec {
            n: self.n,
            d: self.d,
            field: K::spec(self.field()),
            forms: self.forms.iter().map(|f| f.to_string()).collect(),
        })
    }
}

impl<K: Scalar> fmt::Display for Endomorphism<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.forms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

/// Divides a tuple of forms by the scalar content of all their coefficients.
fn remove_common_content<K: Scalar>(forms: Vec<Polynomial<K>>) -> Vec<Polynomial<K>> {
    let unit = K::normalizing_unit(forms.iter().flat_map(|f| f.terms().rev().map(|(_, c)| c)));
    match unit.and_then(|u| u.inv()) {
        Some(inv) => forms.iter().map(|f| f.scale(&inv)).collect(),
        None => forms,
    }
}

fn invert<K: Scalar>(a: &[Vec<K>], field: &K::Field) -> Result<Vec<Vec<K>>> {
    let n = a.len();
    let mut m: Vec<Vec<K>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { K::one_in(field) } else { K::zero_in(field) }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(Error::Singular)?;
        m.swap(c, p);
        let inv = m[c][c].inv().unwrap();
        for x in m[c].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let k = m[r][c].clone();
                for j in 0..2 * n {
                    let v = m[r][j].clone() - k.clone() * m[c][j].clone();
                    m[r][j] = v;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A hypersurface `V(form)`; the form is stored normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceForm<K: Scalar> {
    form: Polynomial<K>,
    m: u32,
    nmain: usize,
}

impl<K: Scalar> HypersurfaceForm<K> {
    pub fn new(form: Polynomial<K>) -> Result<Self> {
        let n = form.nvars();
        Self::with_params(form, n)
    }

    /// Leading `nmain` variables are coordinates, the rest parameters.
    pub fn with_params(form: Polynomial<K>, nmain: usize) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let main: Vec<usize> = (0..nmain).collect();
        if nmain > form.nvars() || !form.is_homogeneous_in(&main) {
            return Err(Error::NotHomogeneous("hypersurface form".into()));
        }
        let m = form.terms().next().unwrap().0.degree_in(&main);
        if m == 0 {
            return Err(Error::InvalidInput("a hypersurface needs degree at least 1".into()));
        }
        Ok(HypersurfaceForm { form: form.normalized(), m, nmain })
    }

    pub fn form(&self) -> &Polynomial<K> {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn nmain(&self) -> usize {
        self.nmain
    }

    pub fn nparams(&self) -> usize {
        self.form.nvars() - self.nmain
    }

    pub fn contains(&self, p: &ProjectivePoint<K>) -> Result<bool> {
        if self.nparams() > 0 {
            return Err(Error::Unsupported("membership test needs a form without parameters".into()));
        }
        Ok(self.form.evaluate(p.coords())?.is_zero())
    }
}

impl<K: Scalar> fmt::Display for HypersurfaceForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

/// A point of projective space, scaled so its last nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint<K: Scalar> {
    coords: Vec<K>,
}

impl<K: Scalar> ProjectivePoint<K> {
    pub fn new(coords: Vec<K>) -> Result<Self> {
        let last = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidInput("all coordinates vanish".into()))?;
        let inv = coords[last].inv().unwrap();
        Ok(ProjectivePoint { coords: coords.into_iter().map(|c| c * inv.clone()).collect() })
    }

    pub fn from_i64(field: &K::Field, coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| K::from_i64(field, c)).collect())
    }

    /// `(t : 1)` on the projective line.
    pub fn affine(field: &K::Field, t: K) -> Self {
        ProjectivePoint { coords: vec![t, K::one_in(field)] }
    }

    /// `(1 : 0)` on the projective line.
    pub fn infinity(field: &K::Field) -> Self {
        ProjectivePoint { coords: vec![K::one_in(field), K::zero_in(field)] }
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Every point of `P^n` over a finite field small enough to enumerate.
    pub fn enumerate(field: &K::Field, n: usize) -> Result<Vec<Self>> {
        let elems = K::elements(field)
            .ok_or_else(|| Error::Unsupported("enumeration needs a small prime field".into()))?;
        let mut out = Vec::new();
        for last in 0..=n {
            // coordinates before `last` range over the field
            let mut idx = vec![0usize; last];
            loop {
                let mut c: Vec<K> = idx.iter().map(|&i| elems[i].clone()).collect();
                c.push(K::one_in(field));
                c.extend((last + 1..=n).map(|_| K::zero_in(field)));
                out.push(ProjectivePoint { coords: c });
                let mut k = 0;
                while k < last {
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == last {
                    break;
                }
            }
        }
        Ok(out)
    }
}

impl<K: Scalar> fmt::Display for ProjectivePoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Strictly increasing iterate indices `i_0 < ... < i_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexTuple(Vec<u32>);

impl IndexTuple {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!("indices {indices:?} are not strictly increasing")));
        }
        Ok(IndexTuple(indices))
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> u32 {
        *self.0.last().unwrap()
    }

    /// All tuples of length `len` with entries at most `bound`, in lexicographic order.
    pub fn all_up_to(len: usize, bound: u32) -> Vec<IndexTuple> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        fn rec(cur: &mut Vec<u32>, len: usize, start: u32, bound: u32, out: &mut Vec<IndexTuple>) {
            if cur.len() == len {
                out.push(IndexTuple(cur.clone()));
                return;
            }
            let remaining = (len - cur.len() - 1) as u32;
            if start + remaining > bound {
                return;
            }
            for i in start..=bound - remaining {
                cur.push(i);
                rec(cur, len, i + 1, bound, out);
                cur.pop();
            }
        }
        rec(&mut cur, len, 0, bound, &mut out);
        out
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for IndexTuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad index {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        IndexTuple::new(v)
    }
}

/// Orbit of a point; when a repeat was found, `points[tail + period] = points[tail]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord<K: Scalar> {
    pub points: Vec<ProjectivePoint<K>>,
    pub tail: Option<usize>,
    pub period: Option<usize>,
    pub max_steps: usize,
}

/// Serialized endomorphism without parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub n: usize,
    pub d: u32,
    pub field: FieldSpec,
    pub forms: Vec<String>,
}

impl MapSpec {
    pub fn to_endomorphism<K: Scalar>(&self, field: &K::Field) -> Result<Endomorphism<K>> {
        if K::spec(field) != self.field {
            return Err(Error::InvalidInput(format!("map is over {}, not {}", self.field, K::spec(field))));
        }
        let forms = self
            .forms
            .iter()
            .map(|s| parse_poly(s, self.n + 1, field))
            .collect::<Result<Vec<_>>>()?;
        let f = Endomorphism::new(forms)?;
        if f.n != self.n || f.d != self.d {
            return Err(Error::InvalidInput(format!(
                "declared n = {}, d = {} but forms give n = {}, d = {}",
                self.n, self.d, f.n, f.d
            )));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests;
