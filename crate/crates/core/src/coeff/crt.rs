use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Residues `value mod modulus` over pairwise distinct prime moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularResidueSet {
    residues: Vec<(BigInt, BigInt)>,
}

impl ModularResidueSet {
    /// Reduces each value into `[0, modulus)`. Rejects duplicate or
    /// non-coprime moduli.
    pub fn new(residues: Vec<(BigInt, BigInt)>) -> Result<Self> {
        let mut out = Vec::with_capacity(residues.len());
        for (i, (v, m)) in residues.iter().enumerate() {
            if m <= &BigInt::one() {
                return Err(Error::InvalidInput(format!("modulus {m} must exceed 1")));
            }
            for (_, m2) in &residues[..i] {
                if m2 == m {
                    return Err(Error::InvalidInput(format!("duplicate modulus {m}")));
                }
                if !m2.gcd(m).is_one() {
                    return Err(Error::InvalidInput(format!("moduli {m2} and {m} share a factor")));
                }
            }
            out.push((v.mod_floor(m), m.clone()));
        }
        Ok(ModularResidueSet { residues: out })
    }

    pub fn residues(&self) -> &[(BigInt, BigInt)] {
        &self.residues
    }

    pub fn modulus(&self) -> BigInt {
        self.residues.iter().map(|(_, m)| m.clone()).product()
    }
}

/// Combines residues into the unique representative in `(-M/2, M/2]`,
/// where `M` is the product of the moduli.
pub fn crt_combine(set: &ModularResidueSet) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    let mut modulus = BigInt::one();
    for (v, m) in &set.residues {
        // acc + modulus * k ≡ v (mod m)
        let inv = mod_inverse(&modulus.mod_floor(m), m)
            .ok_or_else(|| Error::InvalidInput(format!("modulus {m} not coprime to the rest")))?;
        let k = ((v - &acc).mod_floor(m) * inv).mod_floor(m);
        acc += &modulus * k;
        modulus *= m;
    }
    let half = &modulus >> 1u32;
    if acc > half {
        acc -= &modulus;
    }
    Ok(acc)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Finds `a/b` with `|a|, b ≤ sqrt(modulus/2)`, `gcd(b, modulus) = 1` and
/// `a ≡ b·value (mod modulus)`. `Ok(None)` when no such fraction exists.
pub fn rational_reconstruct(value: &BigInt, modulus: &BigInt) -> Result<Option<BigRational>> {
    if modulus <= &BigInt::one() {
        return Err(Error::InvalidInput(format!("modulus {modulus} must exceed 1")));
    }
    let bound = (modulus >> 1u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), value.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !t1.gcd(modulus).is_one() {
        return Ok(None);
    }
    Ok(Some(BigRational::new(r1, t1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pairs: &[(i64, i64)]) -> ModularResidueSet {
        ModularResidueSet::new(pairs.iter().map(|&(v, m)| (v.into(), m.into())).collect()).unwrap()
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_combine(&set(&[(1, 3), (2, 5)])).unwrap(), BigInt::from(7));
        assert_eq!(crt_combine(&set(&[(0, 3), (0, 5)])).unwrap(), BigInt::from(0));
        assert_eq!(crt_combine(&set(&[(2, 3)])).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn crt_rejects_duplicate_moduli() {
        let r = ModularResidueSet::new(vec![(1.into(), 7.into()), (2.into(), 7.into())]);
        assert_eq!(r.unwrap_err().code(), "invalid-input");
    }

    #[test]
    fn reconstruct_examples() {
        let m = BigInt::from(101);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rational_reconstruct(&51.into(), &m).unwrap(), Some(half.clone()));
        assert_eq!(rational_reconstruct(&0.into(), &m).unwrap(), Some(BigRational::zero()));
        assert_eq!(rational_reconstruct(&50.into(), &m).unwrap(), Some(-half));
        assert!(rational_reconstruct(&3.into(), &1.into()).is_err());
    }

    #[test]
    fn reconstruct_reports_absence() {
        // sqrt(101/2) = 7; 1/11 and 11 are both out of range
        let m = BigInt::from(101);
        let v = mod_inverse(&11.into(), &m).unwrap();
        let got = rational_reconstruct(&v, &m).unwrap();
        assert!(got.map_or(true, |q| q != BigRational::new(1.into(), 11.into())));
    }
}
