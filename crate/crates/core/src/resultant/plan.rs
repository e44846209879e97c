//! Macaulay matrices for a fixed degree tuple, and the scalar resultant
//! kernel with its fallbacks.

use std::collections::HashMap;

use rand::Rng;

use crate::coeff::{seeded_rng, Scalar};
use crate::error::{Error, Result};
use crate::mpoly::{det_scalar, monomials_of_degree, Monomial, Polynomial};

use super::ResultantMode;

/// Column layout of the Macaulay matrix for degrees `(d_0, ..., d_n)`.
///
/// Rows and columns are both indexed by the monomials of degree
/// `D = sum(d_i - 1) + 1` in descending graded-lex order. The row for `x^a`
/// holds `x^a / x_i^{d_i} * f_i` for the least `i` with `a_i >= d_i`, so the
/// matrix of `(x_0^{d_0}, ..., x_n^{d_n})` is the identity.
#[derive(Clone, Debug)]
pub struct MacaulayPlan {
    degrees: Vec<u32>,
    critical: u32,
    /// Per form, its monomials of degree `d_i` (descending).
    form_monos: Vec<Vec<Monomial>>,
    form_index: Vec<HashMap<Monomial, usize>>,
    /// Per row: the form used and, for each of its monomials, the column.
    rows: Vec<(usize, Vec<usize>)>,
    /// Indices of non-reduced monomials; these span the minor `M'`.
    minor: Vec<usize>,
}

impl MacaulayPlan {
    pub fn new(degrees: &[u32]) -> Result<Self> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::InvalidInput("Macaulay degrees must be positive".into()));
        }
        let nv = degrees.len();
        let critical = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
        let cols = monomials_of_degree(nv, critical);
        let col_index: HashMap<Monomial, usize> =
            cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let form_monos: Vec<Vec<Monomial>> =
            degrees.iter().map(|&d| monomials_of_degree(nv, d)).collect();
        let form_index = form_monos
            .iter()
            .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let mut rows = Vec::with_capacity(cols.len());
        let mut minor = Vec::new();
        for (r, a) in cols.iter().enumerate() {
            let divisible: Vec<usize> = (0..nv).filter(|&i| a.exps()[i] >= degrees[i]).collect();
            let i = divisible[0];
            if divisible.len() != 1 {
                minor.push(r);
            }
            let mult = a.div(&Monomial::var(nv, i, degrees[i])).unwrap();
            let targets = form_monos[i].iter().map(|m| col_index[&mult.mul(m)]).collect();
            rows.push((i, targets));
        }
        Ok(MacaulayPlan { degrees: degrees.to_vec(), critical, form_monos, form_index, rows, minor })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn critical_degree(&self) -> u32 {
        self.critical
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn minor_size(&self) -> usize {
        self.minor.len()
    }

    /// Monomials of form `i`, in the order dense coefficient vectors use.
    pub fn form_monomials(&self, i: usize) -> &[Monomial] {
        &self.form_monos[i]
    }

    /// Rows of the minor `M'`, which are also its columns.
    pub fn minor_indices(&self) -> &[usize] {
        &self.minor
    }

    /// Per row, the form it holds and the column of each of that form's monomials.
    pub fn row_layout(&self) -> &[(usize, Vec<usize>)] {
        &self.rows
    }

    pub fn form_position(&self, i: usize, m: &Monomial) -> Option<usize> {
        self.form_index[i].get(m).copied()
    }

    /// Dense coefficient vectors of forms homogeneous of the planned degrees.
    pub fn dense<K: Scalar>(&self, forms: &[Polynomial<K>]) -> Result<Vec<Vec<K>>> {
        forms
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let mut v = vec![K::zero_in(f.field()); self.form_monos[i].len()];
                for (m, c) in f.terms() {
                    let k = self.form_position(i, m).ok_or_else(|| {
                        Error::NotHomogeneous(format!("form {i} is not of degree {}", self.degrees[i]))
                    })?;
                    v[k] = c.clone();
                }
                Ok(v)
            })
            .collect()
    }

    /// The Macaulay matrix of dense forms.
    pub fn matrix<K: Scalar>(&self, forms: &[Vec<K>], field: &K::Field) -> Vec<Vec<K>> {
        let n = self.size();
        let mut m = vec![vec![K::zero_in(field); n]; n];
        for (r, (i, targets)) in self.rows.iter().enumerate() {
            for (k, &c) in targets.iter().enumerate() {
                let v = &forms[*i][k];
                if !v.is_zero() {
                    m[r][c] = v.clone();
                }
            }
        }
        m
    }

    /// `det M / det M'`, failing when the minor is singular.
    pub fn ratio<K: Scalar>(&self, forms: &[Vec<K>], field: &K::Field) -> Result<K> {
        let m = self.matrix(forms, field);
        let sub: Vec<Vec<K>> = self
            .minor
            .iter()
            .map(|&r| self.minor.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        let den = det_scalar(sub, field);
        if den.is_zero() {
            return Err(Error::DegenerateMinor(format!(
                "det M' = 0 for the {}x{} minor of the {}x{} Macaulay matrix at degree {}",
                self.minor.len(),
                self.minor.len(),
                self.size(),
                self.size(),
                self.critical
            )));
        }
        Ok(det_scalar(m, field) / den)
    }

    /// Sum over `i` of `prod(d) / d_i`: the degree of the resultant in `t`
    /// for the perturbation `f_i + t x_i^{d_i}`.
    fn perturbation_degree(&self) -> u64 {
        let prod: u64 = self.degrees.iter().map(|&d| d as u64).product();
        self.degrees.iter().map(|&d| prod / d as u64).sum()
    }

    /// Scalar resultant with the fallbacks: up to five random coordinate
    /// changes, then interpolation in `t` of `Res(f + t x^d)`.
    pub fn resultant<K: Scalar>(
        &self,
        forms: &[Vec<K>],
        field: &K::Field,
        seed: u64,
        fallback: bool,
    ) -> Result<(K, ResultantMode)> {
        match self.ratio(forms, field) {
            Ok(v) => return Ok((v, ResultantMode::DirectRatio)),
            Err(e) if !fallback => return Err(e),
            Err(_) => {}
        }
        let mut rng = seeded_rng(seed);
        let nv = self.degrees.len();
        let total: u64 = self.degrees.iter().map(|&d| d as u64).product();
        for _ in 0..5 {
            let a: Vec<Vec<K>> = (0..nv)
                .map(|_| (0..nv).map(|_| K::from_i64(field, rng.gen_range(-9..=9))).collect())
                .collect();
            let det_a = det_scalar(a.clone(), field);
            if det_a.is_zero() {
                continue;
            }
            let moved = self.change_coordinates(forms, &a, field)?;
            if let Ok(v) = self.ratio(&moved, field) {
                return Ok((v / det_a.pow(total), ResultantMode::CoordinateChange));
            }
        }
        self.perturbed(forms, field)
            .map(|v| (v, ResultantMode::ModularInterpolation))
    }

    /// Dense forms of `f(A x)`.
    pub fn change_coordinates<K: Scalar>(
        &self,
        forms: &[Vec<K>],
        a: &[Vec<K>],
        field: &K::Field,
    ) -> Result<Vec<Vec<K>>> {
        let nv = self.degrees.len();
        let images: Vec<Polynomial<K>> = (0..nv)
            .map(|i| {
                Polynomial::from_terms(
                    nv,
                    field.clone(),
                    (0..nv).map(|j| (Monomial::var(nv, j, 1), a[i][j].clone())),
                )
            })
            .collect();
        let polys: Vec<Polynomial<K>> = forms
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let p = Polynomial::from_terms(
                    nv,
                    field.clone(),
                    self.form_monos[i].iter().cloned().zip(v.iter().cloned()),
                );
                p.substitute(&images)
            })
            .collect::<Result<_>>()?;
        self.dense(&polys)
    }

    /// `Res(f)` as the value at `t = 0` of the polynomial `Res(f + t x^d)`,
    /// sampled where the perturbed minor is invertible.
    fn perturbed<K: Scalar>(&self, forms: &[Vec<K>], field: &K::Field) -> Result<K> {
        let need = self.perturbation_degree() as usize + 1;
        let mut samples: Vec<(K, K)> = Vec::with_capacity(need);
        let mut t = 1i64;
        let limit = need + self.minor_size() + 1;
        let nv = self.degrees.len();
        while samples.len() < need && (t as usize) <= limit {
            let tk = K::from_i64(field, t);
            t += 1;
            if tk.is_zero() || samples.iter().any(|(s, _)| *s == tk) {
                continue;
            }
            let mut shifted = forms.to_vec();
            for (i, f) in shifted.iter_mut().enumerate() {
                let k = self.form_index[i][&Monomial::var(nv, i, self.degrees[i])];
                f[k] = f[k].clone() + tk.clone();
            }
            if let Ok(v) = self.ratio(&shifted, field) {
                samples.push((tk, v));
            }
        }
        if samples.len() < need {
            return Err(Error::DegenerateMinor(
                "perturbed minors stayed singular; the field is too small".into(),
            ));
        }
        // Lagrange evaluation at t = 0
        let mut acc = K::zero_in(field);
        for (i, (ti, vi)) in samples.iter().enumerate() {
            let mut w = vi.clone();
            for (j, (tj, _)) in samples.iter().enumerate() {
                if i != j {
                    w = w * tj.clone() / (tj.clone() - ti.clone());
                }
            }
            acc = acc + w;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rational, Rationals};
    use crate::mpoly::parse_poly;

    #[test]
    fn plan_shape() {
        let p = MacaulayPlan::new(&[2, 2, 2]).unwrap();
        assert_eq!(p.critical_degree(), 4);
        assert_eq!(p.size(), 15);
        // degree-4 monomials divisible by two of x^2, y^2, z^2: x2y2, x2z2, y2z2
        assert_eq!(p.minor_size(), 3);
    }

    #[test]
    fn degenerate_minor_is_reported_then_recovered() {
        // the minor of (x, y) contains nothing; use a system whose M' vanishes:
        // (y^2, x^2 + z^2, z^2) keeps common zero-free but breaks the minor
        let f = PrimeField::new(1_000_003);
        let forms: Vec<Polynomial<crate::coeff::Fp>> = ["y^2", "x^2+z^2", "z^2"]
            .iter()
            .map(|s| parse_poly(s, 3, &f).unwrap())
            .collect();
        let plan = MacaulayPlan::new(&[2, 2, 2]).unwrap();
        let dense = plan.dense(&forms).unwrap();
        let err = plan.ratio(&dense, &f).unwrap_err();
        assert_eq!(err.code(), "degenerate-minor");
        let (v, mode) = plan.resultant(&dense, &f, 1, true).unwrap();
        assert_ne!(mode, ResultantMode::DirectRatio);
        // Res(y^2, x^2 + z^2, z^2) = Res(y^2, x^2, z^2) up to sign = +-1
        assert!(v.is_one() || (-v).is_one());
        let (w, _) = plan.perturbed(&dense, &f).map(|w| (w, ())).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn identity_normalization() {
        let plan = MacaulayPlan::new(&[2, 3, 1]).unwrap();
        let forms: Vec<Polynomial<Rational>> = ["x^2", "y^3", "z"]
            .iter()
            .map(|s| parse_poly(s, 3, &Rationals).unwrap())
            .collect();
        let dense = plan.dense(&forms).unwrap();
        let (v, mode) = plan.resultant(&dense, &Rationals, 0, false).unwrap();
        assert!(v.is_one());
        assert_eq!(mode, ResultantMode::DirectRatio);
    }
}
