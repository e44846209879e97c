//! Dense univariate polynomials over `F_p` with `u64` residues.
//!
//! Used for modular fast paths (coprimality and squarefreeness certificates)
//! and for root finding.

use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    /// Coefficients, lowest degree first, no trailing zeros.
    c: Vec<u64>,
    p: u64,
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    let (mut b, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl UPoly {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        UPoly { c, p }
    }

    pub fn zero(p: u64) -> Self {
        UPoly { c: vec![], p }
    }

    pub fn x(p: u64) -> Self {
        UPoly { c: vec![0, 1], p }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.c.last().unwrap()
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        UPoly::new(v, self.p)
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.p);
        }
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        UPoly::new(v, self.p)
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() < d.c.len() {
            return (UPoly::zero(p), self.clone());
        }
        let inv = invmod(d.lead(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = mulmod(r[k + dd], inv, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(coef, b, p)) % p;
            }
        }
        r.truncate(dd);
        (UPoly::new(q, p), UPoly::new(r, p))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lead(), self.p);
        UPoly::new(self.c.iter().map(|&a| mulmod(a, inv, self.p)).collect(), self.p)
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mulmod(a, i as u64 % self.p, self.p))
            .collect();
        UPoly::new(v, self.p)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (mulmod(acc, x, self.p) + a) % self.p)
    }

    /// `base^e mod self`.
    pub fn powmod(&self, base: &UPoly, mut e: u128) -> UPoly {
        let mut acc = UPoly::new(vec![1], self.p).rem(self);
        let mut b = base.rem(self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(self);
            }
            b = b.mul(&b).rem(self);
            e >>= 1;
        }
        acc
    }

    /// Distinct roots in `F_p`, sorted ascending.
    pub fn roots<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        if self.is_zero() {
            return vec![];
        }
        let p = self.p;
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == Some(0) {
            return out;
        }
        // split off the product of linear factors: gcd(f, x^p - x)
        let xp = f.powmod(&UPoly::x(p), p as u128);
        let g = f.gcd(&xp.sub(&UPoly::x(p)));
        split_linear(&g, rng, &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn split_linear<R: Rng + ?Sized>(g: &UPoly, rng: &mut R, out: &mut Vec<u64>) {
    let p = g.p;
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            // x + c
            let c = mulmod(g.c[0], invmod(g.c[1], p), p);
            out.push((p - c) % p);
        }
        Some(_) => {
            if p < 64 {
                for x in 0..p {
                    if g.eval(x) == 0 {
                        out.push(x);
                    }
                }
                return;
            }
            loop {
                let delta = rng.gen_range(0..p);
                let base = UPoly::new(vec![delta, 1], p);
                let h = g.powmod(&base, ((p - 1) / 2) as u128);
                let d = g.gcd(&h.sub(&UPoly::new(vec![1], p)));
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && Some(dd) < g.degree() {
                    let (q, _) = g.divrem(&d);
                    split_linear(&d, rng, out);
                    split_linear(&q.monic(), rng, out);
                    return;
                }
            }
        }
    }
}
