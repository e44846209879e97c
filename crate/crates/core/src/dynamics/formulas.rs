//! Dimension and degree counts.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

use super::IndexTuple;

fn binom(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Dimension of the projective space of degree-`m` forms in `n + 1` variables.
pub fn dim_forms(n: u64, m: u64) -> Result<BigUint> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("dim_forms needs n, m >= 1".into()));
    }
    Ok(binom(n + m, m) - 1u32)
}

/// Dimension of the space of degree-`d` endomorphisms of `P^n`.
pub fn dim_end(n: u64, d: u64) -> Result<BigUint> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("dim_end needs n, d >= 1".into()));
    }
    Ok(binom(n + d, d) * (n + 1) - 1u32)
}

/// Degree of the certificate in the coefficients of a generic degree-`m`
/// form: `m^n d^{(n-1) sum i} sum d^{i_k}`.
pub fn generic_cert_degree(n: u64, m: u64, d: u64, indices: &IndexTuple) -> Result<BigUint> {
    if n == 0 || m == 0 || d == 0 {
        return Err(Error::InvalidInput("generic_cert_degree needs n, m, d >= 1".into()));
    }
    if indices.len() as u64 != n + 1 {
        return Err(Error::Arity { expected: n as usize + 1, got: indices.len() });
    }
    let d = BigUint::from(d);
    let total: u64 = indices.indices().iter().map(|&i| i as u64).sum();
    let sum: BigUint = indices.indices().iter().map(|&i| d.pow(i)).sum();
    Ok(BigUint::from(m).pow(n as u32) * d.pow(((n - 1) * total) as u32) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(dim_forms(2, 1).unwrap(), 2u32.into());
        assert_eq!(dim_end(1, 2).unwrap(), 5u32.into());
        assert_eq!(dim_end(2, 2).unwrap(), 17u32.into());
        let t = IndexTuple::new(vec![0, 1, 2]).unwrap();
        assert_eq!(generic_cert_degree(2, 1, 2, &t).unwrap(), 56u32.into());
        assert!(dim_forms(0, 1).is_err());
        assert!(generic_cert_degree(2, 1, 2, &IndexTuple::new(vec![0, 1]).unwrap()).is_err());
    }
}
