use crate::coeff::Scalar;
use crate::error::{Error, Result};

use super::gcd::div_exact;
use super::poly::Polynomial;

/// Rectangular matrix of polynomials sharing one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<K: Scalar> {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<K>>,
}

impl<K: Scalar> PolyMatrix<K> {
    pub fn new(rows: Vec<Vec<Polynomial<K>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::InvalidInput("ragged matrix".into()));
            }
            entries.extend(r);
        }
        if let Some(first) = entries.first() {
            for e in &entries {
                first.check_ring(e)?;
            }
        }
        Ok(PolyMatrix { rows: nrows, cols: ncols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<K> {
        &self.entries[i * self.cols + j]
    }

    fn square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Err(Error::InvalidInput("determinant of an empty matrix".into()));
        }
        Ok(())
    }
}

/// Exact determinant: cofactor expansion up to 4x4, Bareiss above.
pub fn determinant<K: Scalar>(m: &PolyMatrix<K>) -> Result<Polynomial<K>> {
    m.square()?;
    if m.rows <= 4 {
        determinant_cofactor(m)
    } else {
        determinant_bareiss(m)
    }
}

/// Laplace expansion along the first row.
pub fn determinant_cofactor<K: Scalar>(m: &PolyMatrix<K>) -> Result<Polynomial<K>> {
    m.square()?;
    let idx: Vec<usize> = (0..m.cols).collect();
    Ok(cofactor_rec(m, 0, &idx))
}

fn cofactor_rec<K: Scalar>(m: &PolyMatrix<K>, row: usize, cols: &[usize]) -> Polynomial<K> {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = Polynomial::zero(m.entries[0].nvars(), m.entries[0].field().clone());
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(row, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_rec(m, row + 1, &rest);
        let t = e * &minor;
        acc = if k % 2 == 0 { acc + t } else { acc - t };
    }
    acc
}

/// Fraction-free Gaussian elimination with exact division.
pub fn determinant_bareiss<K: Scalar>(m: &PolyMatrix<K>) -> Result<Polynomial<K>> {
    m.square()?;
    let n = m.rows;
    let mut a: Vec<Vec<Polynomial<K>>> =
        (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let proto = &m.entries[0];
    let mut prev = Polynomial::one(proto.nvars(), proto.field().clone());
    let mut sign = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(Polynomial::zero(proto.nvars(), proto.field().clone())),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = div_exact(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { -det } else { det })
}

/// Determinant of a scalar matrix by Gaussian elimination (rows consumed).
pub fn det_scalar<K: Scalar>(mut a: Vec<Vec<K>>, field: &K::Field) -> K {
    let n = a.len();
    let mut det = K::one_in(field);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return K::zero_in(field);
        };
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        let inv = a[k][k].inv().unwrap();
        det = det * a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone() * inv.clone();
            let (top, bottom) = a.split_at_mut(i);
            let (rk, ri) = (&top[k], &mut bottom[0]);
            for j in k + 1..n {
                if !rk[j].is_zero() {
                    ri[j] = ri[j].clone() - factor.clone() * rk[j].clone();
                }
            }
        }
    }
    det
}

/// Solves the (possibly overdetermined) system `A x = b`; fails if the
/// system is inconsistent or its solution is not unique.
pub fn solve_scalar<K: Scalar>(a: Vec<Vec<K>>, b: Vec<K>) -> Result<Vec<K>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<K>> = a
        .into_iter()
        .zip(b)
        .map(|(mut r, v)| {
            r.push(v);
            r
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            return Err(Error::Interpolation("underdetermined system".into()));
        };
        m.swap(piv, r);
        let inv = m[r][c].inv().unwrap();
        for j in c..=cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..=cols {
                let t = factor.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return Err(Error::Interpolation("inconsistent system".into()));
    }
    Ok(m.into_iter().take(cols).map(|row| row[cols].clone()).collect())
}
