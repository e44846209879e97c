use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Scalar;
use crate::error::{Error, Result};

use super::monomial::Monomial;

/// Sparse multivariate polynomial over a field.
///
/// Terms are kept in a map ordered by graded-lex monomial order with no zero
/// coefficients stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<K: Scalar> {
    nvars: usize,
    field: K::Field,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Scalar> Polynomial<K> {
    pub fn zero(nvars: usize, field: K::Field) -> Self {
        Polynomial { nvars, field, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, field: K::Field) -> Self {
        Self::constant(nvars, K::one_in(&field))
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        let field = c.field();
        let mut p = Self::zero(nvars, field);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_i64(nvars: usize, field: K::Field, c: i64) -> Self {
        let c = K::from_i64(&field, c);
        let mut p = Self::zero(nvars, field);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, field: K::Field, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let one = K::one_in(&field);
        Self::term(nvars, field, Monomial::var(nvars, i, 1), one)
    }

    pub fn term(nvars: usize, field: K::Field, m: Monomial, c: K) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        let mut p = Self::zero(nvars, field);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds from `(monomial, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(nvars: usize, field: K::Field, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, K)>,
    {
        let mut p = Self::zero(nvars, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: K) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &K::Field {
        &self.field
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(|| K::zero_in(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<K> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one(self.nvars)))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exps()[var]).max().unwrap_or(0)
    }

    /// Maximum total degree in a block of variables.
    pub fn degree_in_block(&self, vars: &[usize]) -> u32 {
        self.terms.keys().map(|m| m.degree_in(vars)).max().unwrap_or(0)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Homogeneous in the block `vars` (every term has the same block degree).
    pub fn is_homogeneous_in(&self, vars: &[usize]) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree_in(vars));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|m| m.exps()[v] > 0))
            .collect()
    }

    pub fn check_ring(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.field != other.field {
            return Err(Error::RingMismatch(format!(
                "({} vars over {}) vs ({} vars over {})",
                self.nvars, self.field, other.nvars, other.field
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.field.clone());
        }
        Polynomial {
            nvars: self.nvars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.field.clone());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::InvalidInput(format!(
                "variable index {var} out of range for {} variables",
                self.nvars
            )));
        }
        let mut out = Self::zero(self.nvars, self.field.clone());
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.exps_mut()[var] -= 1;
            out.add_term(n, c.clone() * K::from_i64(&self.field, e as i64));
        }
        Ok(out)
    }

    /// Replaces `x_i` by `images[i]` and expands. The images fix the output ring.
    pub fn substitute(&self, images: &[Polynomial<K>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: images.len() });
        }
        let Some(first) = images.first() else {
            // constant ring: nothing to substitute
            return Ok(self.clone());
        };
        for im in images {
            first.check_ring(im)?;
        }
        let (nv, field) = (first.nvars, first.field.clone());
        let mut powers: Vec<Vec<Polynomial<K>>> = images
            .iter()
            .map(|im| vec![Polynomial::one(nv, field.clone()), im.clone()])
            .collect();
        let mut out = Polynomial::zero(nv, field.clone());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(nv, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = out + t;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[K]) -> Result<K> {
        if point.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: point.len() });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[K]) -> K {
        let mut acc = K::zero_in(&self.field);
        // cache small powers per variable
        let mut cache: Vec<Vec<K>> = point.iter().map(|x| vec![K::one_in(&self.field), x.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                while pw.len() <= e as usize {
                    let next = pw[pw.len() - 1].clone() * point[i].clone();
                    pw.push(next);
                }
                t = t * pw[e as usize].clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Fixes the listed variables to values, keeping the ring.
    pub fn specialize(&self, assignment: &[(usize, K)]) -> Self {
        let mut out = Self::zero(self.nvars, self.field.clone());
        for (m, c) in &self.terms {
            let mut n = m.clone();
            let mut t = c.clone();
            for (v, val) in assignment {
                let e = n.exps()[*v];
                if e > 0 {
                    t = t * val.pow(e as u64);
                    n.exps_mut()[*v] = 0;
                }
            }
            out.add_term(n, t);
        }
        out
    }

    /// Moves variable `i` to position `map[i]` in a ring of `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(nvars, self.field.clone());
        for (m, c) in &self.terms {
            let mut n = Monomial::one(nvars);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    n.exps_mut()[map[i]] += e;
                }
            }
            out.add_term(n, c.clone());
        }
        out
    }

    /// Keeps only variables `keep` (in order); all others must be absent.
    pub fn restrict(&self, keep: &[usize]) -> Option<Self> {
        let mut out = Self::zero(keep.len(), self.field.clone());
        for (m, c) in &self.terms {
            let total: u32 = m.degree();
            let kept: Vec<u32> = keep.iter().map(|&v| m.exps()[v]).collect();
            if kept.iter().sum::<u32>() != total {
                return None;
            }
            out.add_term(Monomial::new(&kept), c.clone());
        }
        Some(out)
    }

    pub fn map_coeffs<L: Scalar>(
        &self,
        field: L::Field,
        mut f: impl FnMut(&K) -> Option<L>,
    ) -> Option<Polynomial<L>> {
        let mut out = Polynomial::zero(self.nvars, field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Some(out)
    }

    /// View as a polynomial in `var` with coefficients free of `var`.
    pub fn split_by_var(&self, var: usize) -> BTreeMap<u32, Polynomial<K>> {
        let mut out: BTreeMap<u32, Polynomial<K>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            let mut n = m.clone();
            n.exps_mut()[var] = 0;
            out.entry(e)
                .or_insert_with(|| Polynomial::zero(self.nvars, self.field.clone()))
                .add_term(n, c.clone());
        }
        out
    }

    /// Splits by the exponents of the leading `nmain` variables; coefficients
    /// live in the ring of the remaining variables (renumbered from 0).
    pub fn split_main(&self, nmain: usize) -> BTreeMap<Monomial, Polynomial<K>> {
        let np = self.nvars - nmain;
        let mut out: BTreeMap<Monomial, Polynomial<K>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let main = Monomial::new(&m.exps()[..nmain]);
            let rest = Monomial::new(&m.exps()[nmain..]);
            out.entry(main)
                .or_insert_with(|| Polynomial::zero(np, self.field.clone()))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut out = Self::zero(self.nvars, self.field.clone());
        for (n, c) in &self.terms {
            out.terms.insert(n.div(m)?, c.clone());
        }
        Some(out)
    }

    /// Canonical representative up to a nonzero scalar: over the rationals,
    /// integer coefficients with gcd 1 and positive leading coefficient; over
    /// a prime field, monic.
    pub fn normalized(&self) -> Self {
        match self.content_unit() {
            None => self.clone(),
            Some(u) => {
                let inv = u.inv().expect("nonzero unit");
                self.scale(&inv)
            }
        }
    }

    /// The scalar removed by [`Polynomial::normalized`].
    pub fn content_unit(&self) -> Option<K> {
        K::normalizing_unit(self.terms.values().rev())
    }

    pub fn equal_up_to_scalar(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Substitutes `x_v = 1` for the last variable of a homogeneous block.
    pub fn dehomogenize(&self, var: usize) -> Self {
        self.specialize(&[(var, K::one_in(&self.field))])
    }

    /// Multiplies each term by `x_var^(d - deg_block(term))`.
    pub fn homogenize_block(&self, block: &[usize], var: usize, d: u32) -> Result<Self> {
        let mut out = Self::zero(self.nvars, self.field.clone());
        for (m, c) in &self.terms {
            let e = m.degree_in(block);
            if e > d {
                return Err(Error::InvalidInput(format!(
                    "term of block degree {e} exceeds target {d}"
                )));
            }
            let mut n = m.clone();
            n.exps_mut()[var] += d - e;
            out.add_term(n, c.clone());
        }
        Ok(out)
    }
}

impl<K: Scalar> Add for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, o: &Polynomial<K>) -> Polynomial<K> {
        assert_eq!(self.nvars, o.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<K: Scalar> Add for Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(mut self, o: Polynomial<K>) -> Polynomial<K> {
        assert_eq!(self.nvars, o.nvars, "ring mismatch");
        if self.terms.len() < o.terms.len() {
            return o + self;
        }
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<K: Scalar> Sub for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, o: &Polynomial<K>) -> Polynomial<K> {
        assert_eq!(self.nvars, o.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<K: Scalar> Sub for Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, o: Polynomial<K>) -> Polynomial<K> {
        &self - &o
    }
}

impl<K: Scalar> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        Polynomial {
            nvars: self.nvars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<K: Scalar> Neg for Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        -&self
    }
}

impl<K: Scalar> Mul for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, o: &Polynomial<K>) -> Polynomial<K> {
        assert_eq!(self.nvars, o.nvars, "ring mismatch");
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero(self.nvars, self.field.clone());
        }
        if o.terms.len() == 1 {
            let (m, c) = o.terms.iter().next().unwrap();
            let mut p = self.mul_monomial(m);
            if !c.is_one() {
                p = p.scale(c);
            }
            return p;
        }
        let mut acc: HashMap<Monomial, K> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1.clone() * c2.clone();
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().clone() + c;
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Polynomial {
            nvars: self.nvars,
            field: self.field.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<K: Scalar> Mul for Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, o: Polynomial<K>) -> Polynomial<K> {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Rational, Rationals};
    use crate::mpoly::parse::parse_poly;

    fn p(s: &str, n: usize) -> Polynomial<Rational> {
        parse_poly::<Rational>(s, n, &Rationals).unwrap()
    }

    #[test]
    fn ring_ops() {
        assert_eq!(&p("x+y", 2) * &p("x-y", 2), p("x^2-y^2", 2));
        assert!((&p("x+y", 2) * &Polynomial::zero(2, Rationals)).is_zero());
        assert_eq!(p("x+y", 2).pow(2), p("x^2+2*x*y+y^2", 2));
        let a = p("x0", 2);
        let b = p("x0", 3);
        assert_eq!(a.checked_add(&b).unwrap_err().code(), "ring-mismatch");
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^3", 3).partial_derivative(0).unwrap(), p("3*x^2", 3));
        assert!(p("y^2", 3).partial_derivative(0).unwrap().is_zero());
        assert_eq!(p("x*y*z", 3).partial_derivative(1).unwrap(), p("x*z", 3));
        assert!(p("x", 3).partial_derivative(3).is_err());
    }

    #[test]
    fn substitution() {
        let sub = p("x^2", 2).substitute(&[p("x+y", 2), p("y", 2)]).unwrap();
        assert_eq!(sub, p("x^2+2*x*y+y^2", 2));
        let q = p("x^3-2*x*y+7", 2);
        assert_eq!(q.substitute(&[p("x", 2), p("y", 2)]).unwrap(), q);
        let sq = p("x0*x1", 2).substitute(&[p("x0^2", 2), p("x1^2", 2)]).unwrap();
        assert_eq!(sq, p("x0^2*x1^2", 2));
        assert!(q.substitute(&[p("x", 2)]).is_err());
    }

    #[test]
    fn evaluation() {
        let r = |n: i64| Rational::from_integer(n.into());
        assert!(p("x+y+z", 3).evaluate(&[r(5), r(-32), r(27)]).unwrap().is_zero());
        assert!(p("15*x-6*y+z", 3).evaluate(&[r(-1), r(-2), r(3)]).unwrap().is_zero());
        assert!(p("x^2*y-3*z^3", 3).evaluate(&[r(0), r(0), r(0)]).unwrap().is_zero());
        assert!(p("x", 3).evaluate(&[r(0)]).is_err());
    }

    #[test]
    fn degrees() {
        let q = p("x^2+2*x*y", 2);
        assert_eq!(q.degree(), Some(2));
        assert!(q.is_homogeneous());
        assert!(!p("x^2+x", 2).is_homogeneous());
        assert_eq!(Polynomial::<Rational>::zero(2, Rationals).degree(), None);
    }

    #[test]
    fn normalization() {
        let q = p("2/3*x+4/3*y", 2);
        assert_eq!(q.content_unit().unwrap(), Rational::new(2.into(), 3.into()));
        assert_eq!(q.normalized(), p("x+2*y", 2));
        assert_eq!(p("-x", 2).normalized(), p("x", 2));
        assert_eq!(p("-x", 2).content_unit().unwrap(), Rational::from_integer((-1).into()));
        assert_eq!(p("6*x^2", 2).normalized(), p("x^2", 2));
        assert!(p("2*x-4*y", 2).equal_up_to_scalar(&p("-x+2*y", 2)));
    }
}
