//! Polynomial interpolation.
//!
//! [`interpolate`] solves the dense Vandermonde-type system for arbitrary
//! sample points. [`NewtonGrid`] is the fast path used by the parametric
//! resultant code: it chooses the sample points itself, on a product of
//! simplices, and recovers the polynomial by divided differences.

use std::collections::HashMap;

use crate::coeff::Scalar;
use crate::error::{Error, Result};

use super::matrix::solve_scalar;
use super::monomial::{binomial, monomials_of_degree, Monomial};
use super::poly::Polynomial;

/// The unique polynomial of total degree at most `bound` through the samples.
pub fn interpolate<K: Scalar>(
    samples: &[(Vec<K>, K)],
    bound: u32,
    nvars: usize,
    field: &K::Field,
) -> Result<Polynomial<K>> {
    let needed = binomial(bound as u64 + nvars as u64, nvars as u64) as usize;
    if samples.len() < needed {
        return Err(Error::Interpolation(format!(
            "{} samples for {needed} unknowns",
            samples.len()
        )));
    }
    let monos: Vec<Monomial> = (0..=bound).flat_map(|d| monomials_of_degree(nvars, d)).collect();
    let mut rows = Vec::with_capacity(samples.len());
    let mut rhs = Vec::with_capacity(samples.len());
    for (pt, v) in samples {
        if pt.len() != nvars {
            return Err(Error::Arity { expected: nvars, got: pt.len() });
        }
        rows.push(
            monos
                .iter()
                .map(|m| {
                    m.exps()
                        .iter()
                        .zip(pt)
                        .fold(K::one_in(field), |acc, (&e, x)| acc * x.pow(e as u64))
                })
                .collect(),
        );
        rhs.push(v.clone());
    }
    let coeffs = solve_scalar(rows, rhs)?;
    Ok(Polynomial::from_terms(nvars, field.clone(), monos.into_iter().zip(coeffs)))
}

/// A block of interpolation variables with a total-degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeGroup {
    pub vars: Vec<usize>,
    pub bound: u32,
}

/// Sample grid for polynomials whose degree in each group of variables is
/// bounded. Each variable uses the same node sequence; the sample with
/// index vector `a` sits at `(nodes[a_0], nodes[a_1], ...)`.
#[derive(Clone, Debug)]
pub struct NewtonGrid<K: Scalar> {
    nvars: usize,
    groups: Vec<DegreeGroup>,
    nodes: Vec<K>,
    group_of: Vec<usize>,
    indices: Vec<Vec<u32>>,
    position: HashMap<Vec<u32>, usize>,
}

impl<K: Scalar> NewtonGrid<K> {
    /// `groups` must partition `0..nvars`; `nodes` must be pairwise distinct
    /// and at least as many as the largest bound plus one.
    pub fn new(nvars: usize, groups: Vec<DegreeGroup>, nodes: Vec<K>) -> Result<Self> {
        let mut group_of = vec![usize::MAX; nvars];
        for (g, grp) in groups.iter().enumerate() {
            for &v in &grp.vars {
                if v >= nvars || group_of[v] != usize::MAX {
                    return Err(Error::InvalidInput("degree groups must partition the variables".into()));
                }
                group_of[v] = g;
            }
        }
        if group_of.contains(&usize::MAX) {
            return Err(Error::InvalidInput("degree groups must cover every variable".into()));
        }
        let maxb = groups.iter().map(|g| g.bound).max().unwrap_or(0) as usize;
        if nodes.len() <= maxb {
            return Err(Error::Interpolation(format!("{} nodes for degree {maxb}", nodes.len())));
        }
        let mut indices = vec![vec![0u32; nvars]];
        for v in 0..nvars {
            let g = &groups[group_of[v]];
            let mut next = Vec::new();
            for idx in &indices {
                let used: u32 = g.vars.iter().filter(|&&w| w < v).map(|&w| idx[w]).sum();
                for e in 0..=(g.bound - used) {
                    let mut n = idx.clone();
                    n[v] = e;
                    next.push(n);
                }
            }
            indices = next;
        }
        let position = indices.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        Ok(NewtonGrid { nvars, groups, nodes, group_of, indices, position })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Coordinates of the `i`-th sample.
    pub fn point(&self, i: usize) -> Vec<K> {
        self.indices[i].iter().map(|&a| self.nodes[a as usize].clone()).collect()
    }

    /// Recovers the polynomial from values listed in sample order.
    pub fn interpolate(&self, values: &[K], field: &K::Field) -> Result<Polynomial<K>> {
        if values.len() != self.len() {
            return Err(Error::Arity { expected: self.len(), got: values.len() });
        }
        let mut c = values.to_vec();
        // divided differences along each coordinate in turn
        for v in 0..self.nvars {
            let g = &self.groups[self.group_of[v]];
            for (start, idx) in self.indices.iter().enumerate() {
                if idx[v] != 0 {
                    continue;
                }
                let used: u32 = g.vars.iter().filter(|&&w| w != v).map(|&w| idx[w]).sum();
                let len = (g.bound - used) as usize + 1;
                let line: Vec<usize> = (0..len)
                    .map(|e| {
                        if e == 0 {
                            return start;
                        }
                        let mut k = idx.clone();
                        k[v] = e as u32;
                        self.position[&k]
                    })
                    .collect();
                for j in 1..len {
                    for i in (j..len).rev() {
                        let den = self.nodes[i].clone() - self.nodes[i - j].clone();
                        let inv = den
                            .inv()
                            .ok_or_else(|| Error::Interpolation("repeated interpolation node".into()))?;
                        c[line[i]] = (c[line[i]].clone() - c[line[i - 1]].clone()) * inv;
                    }
                }
            }
        }
        // expand the Newton form one coordinate at a time by Horner's rule
        let coeffs: HashMap<&[u32], &K> =
            self.indices.iter().map(|a| a.as_slice()).zip(c.iter()).collect();
        let mut prefix = vec![0u32; self.nvars];
        Ok(self.expand(0, &mut prefix, &coeffs, field))
    }

    fn expand(
        &self,
        v: usize,
        prefix: &mut Vec<u32>,
        coeffs: &HashMap<&[u32], &K>,
        field: &K::Field,
    ) -> Polynomial<K> {
        if v == self.nvars {
            return Polynomial::constant(self.nvars, coeffs[prefix.as_slice()].clone());
        }
        let g = &self.groups[self.group_of[v]];
        let used: u32 = g.vars.iter().filter(|&&w| w < v).map(|&w| prefix[w]).sum();
        let top = g.bound - used;
        let x = Polynomial::var(self.nvars, field.clone(), v);
        let mut acc = Polynomial::zero(self.nvars, field.clone());
        for e in (0..=top).rev() {
            prefix[v] = e;
            let inner = self.expand(v + 1, prefix, coeffs, field);
            let shift = &x - &Polynomial::constant(self.nvars, self.nodes[e as usize].clone());
            acc = &(&acc * &shift) + &inner;
        }
        prefix[v] = 0;
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp, PrimeField, Rational, Rationals};
    use crate::mpoly::parse_poly;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn dense_examples() {
        let pts = [(0, 0), (1, 0), (0, 1), (2, 3)];
        let s: Vec<_> = pts.iter().map(|&(a, b)| (vec![r(a), r(b)], r(a + b))).collect();
        let p = interpolate(&s, 1, 2, &Rationals).unwrap();
        assert_eq!(p, parse_poly("x0+x1", 2, &Rationals).unwrap());
        let c: Vec<_> = pts.iter().map(|&(a, b)| (vec![r(a), r(b)], r(7))).collect();
        assert_eq!(interpolate(&c, 1, 2, &Rationals).unwrap(), Polynomial::from_i64(2, Rationals, 7));
        let sq: Vec<_> = (0..4).map(|a| (vec![r(a)], r(a * a))).collect();
        assert_eq!(interpolate(&sq, 1, 1, &Rationals).unwrap_err().code(), "interpolation-failed");
        assert!(interpolate(&sq[..1], 1, 1, &Rationals).is_err());
    }

    #[test]
    fn newton_grid_recovers_grouped_polynomial() {
        let f = PrimeField::new(10007);
        let target: Polynomial<Fp> =
            parse_poly("x0^3*x3 + 5*x1*x2^2 - x0*x1*x2*x3 + 4*x3^2 + 9", 4, &f).unwrap();
        let groups = vec![
            DegreeGroup { vars: vec![0, 1], bound: 3 },
            DegreeGroup { vars: vec![2, 3], bound: 2 },
        ];
        let nodes = (0..4).map(|i| f.elem(3 * i + 1)).collect();
        let grid = NewtonGrid::new(4, groups, nodes).unwrap();
        assert_eq!(grid.len(), 10 * 6);
        let vals: Vec<Fp> = (0..grid.len()).map(|i| target.evaluate(&grid.point(i)).unwrap()).collect();
        assert_eq!(grid.interpolate(&vals, &f).unwrap(), target);
    }
}
