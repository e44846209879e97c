//! Resultants with polynomial coefficients by evaluation and interpolation.
//!
//! The parameters are split into groups; the resultant's degree in each
//! group is bounded by multihomogeneity. Groups in which every form is
//! homogeneous are dehomogenized before sampling and homogenized afterwards,
//! which shrinks the sample grid by one dimension per group. Sampling runs
//! in parallel over a prime field; over the rationals the images for several
//! primes are combined by CRT and rational reconstruction.

use rand::Rng;
use rayon::prelude::*;

use crate::coeff::{modular_primes, seeded_rng, Fp, ModularPlan, PrimeField, Scalar};
use crate::error::{Error, Result};
use crate::mpoly::{DegreeGroup, Monomial, NewtonGrid, Polynomial};

use super::plan::MacaulayPlan;
use super::MacaulaySystem;

/// Terms of one form: dense position in the plan, parameter exponents, coefficient.
type SplitForm<K> = Vec<(usize, Monomial, K)>;

pub(crate) fn split_forms<K: Scalar>(sys: &MacaulaySystem<K>, plan: &MacaulayPlan) -> Vec<SplitForm<K>> {
    let nmain = sys.nmain();
    sys.forms()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            f.terms()
                .map(|(m, c)| {
                    let main = Monomial::new(&m.exps()[..nmain]);
                    let k = plan.form_position(i, &main).expect("validated degree");
                    (k, Monomial::new(&m.exps()[nmain..]), c.clone())
                })
                .collect()
        })
        .collect()
}

/// Dense forms at a parameter point.
pub(crate) fn specialize<K: Scalar>(
    split: &[SplitForm<K>],
    plan: &MacaulayPlan,
    point: &[K],
    field: &K::Field,
) -> Vec<Vec<K>> {
    let mut powers: Vec<Vec<K>> = point.iter().map(|x| vec![K::one_in(field), x.clone()]).collect();
    split
        .iter()
        .enumerate()
        .map(|(i, terms)| {
            let mut v = vec![K::zero_in(field); plan.form_monomials(i).len()];
            for (k, pm, c) in terms {
                let mut t = c.clone();
                for (j, &e) in pm.exps().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let pw = &mut powers[j];
                    while pw.len() <= e as usize {
                        let next = pw[pw.len() - 1].clone() * point[j].clone();
                        pw.push(next);
                    }
                    t = t * pw[e as usize].clone();
                }
                v[*k] = v[*k].clone() + t;
            }
            v
        })
        .collect()
}

/// One parameter group as sampled: the variables interpolated over and, for
/// homogeneous groups, the variable fixed to 1.
struct SampledGroup {
    interp: Vec<usize>,
    fixed: Option<usize>,
    bound: u32,
}

fn sampled_groups<K: Scalar>(sys: &MacaulaySystem<K>) -> Vec<SampledGroup> {
    sys.group_bounds()
        .into_iter()
        .map(|(vars, bound, homogeneous)| {
            if homogeneous {
                let mut interp = vars.clone();
                let fixed = interp.pop();
                SampledGroup { interp, fixed, bound }
            } else {
                SampledGroup { interp: vars, fixed: None, bound }
            }
        })
        .collect()
}

fn image_mod_prime(
    sys: &MacaulaySystem<Fp>,
    plan: &MacaulayPlan,
    seed: u64,
) -> Result<Polynomial<Fp>> {
    let field = *sys.field();
    let q = field.modulus();
    let np = sys.nparams();
    let groups = sampled_groups(sys);
    let split = split_forms(sys, plan);
    let grid_vars: Vec<usize> = groups.iter().flat_map(|g| g.interp.iter().copied()).collect();
    let mut pos = vec![usize::MAX; np];
    for (k, &v) in grid_vars.iter().enumerate() {
        pos[v] = k;
    }
    let dgroups: Vec<DegreeGroup> = groups
        .iter()
        .filter(|g| !g.interp.is_empty())
        .map(|g| DegreeGroup { vars: g.interp.iter().map(|&v| pos[v]).collect(), bound: g.bound })
        .collect();
    let maxb = groups.iter().map(|g| g.bound).max().unwrap_or(0) as u64;
    if q <= 4 * (maxb + 1) {
        return Err(Error::Interpolation(format!("prime {q} too small for degree {maxb}")));
    }
    let mut rng = seeded_rng(seed ^ q);
    let mut nodes: Vec<Fp> = Vec::new();
    while nodes.len() as u64 <= maxb {
        let x = field.elem(rng.gen_range(1..q));
        if !nodes.contains(&x) {
            nodes.push(x);
        }
    }
    let grid = NewtonGrid::new(grid_vars.len(), dgroups, nodes)?;
    let values: Vec<Fp> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let gp = grid.point(i);
            let mut point = vec![field.elem(1); np];
            for (k, &v) in grid_vars.iter().enumerate() {
                point[v] = gp[k];
            }
            let dense = specialize(&split, plan, &point, &field);
            plan.resultant(&dense, &field, seed.wrapping_add(i as u64), true).map(|r| r.0)
        })
        .collect::<Result<_>>()?;
    let interp = grid.interpolate(&values, &field)?;
    let mut out = interp.remap(np, &grid_vars);
    for g in &groups {
        if let Some(fv) = g.fixed {
            let mut block = g.interp.clone();
            block.push(fv);
            out = out.homogenize_block(&block, fv, g.bound)?;
        }
    }
    Ok(out)
}

fn reduce_system<K: Scalar>(sys: &MacaulaySystem<K>, q: u64) -> Option<MacaulaySystem<Fp>> {
    let f = PrimeField::new(q);
    let forms = sys
        .forms()
        .iter()
        .map(|p| p.map_coeffs(f, |c| c.residue(q).map(|v| f.elem(v))))
        .collect::<Option<Vec<_>>>()?;
    Some(sys.with_forms(forms))
}

/// The resultant as a polynomial in the parameters, by interpolation.
pub(crate) fn modular_resultant<K: Scalar>(
    sys: &MacaulaySystem<K>,
    plan: &MacaulayPlan,
    seed: u64,
) -> Result<Polynomial<K>> {
    let field = sys.field().clone();
    let nodes = sys.group_bounds().iter().map(|g| g.1 as u64).max().unwrap_or(0) + 1;
    match K::modular_plan(&field, nodes) {
        ModularPlan::Direct(p) => {
            let red = reduce_system(sys, p).expect("same prime");
            let img = image_mod_prime(&red, plan, seed)?;
            Ok(img
                .map_coeffs(field.clone(), |c| Some(K::from_bigint(&field, &c.value().into())))
                .unwrap())
        }
        ModularPlan::ViaRationals => {
            let lifted = sys.with_forms(
                sys.forms()
                    .iter()
                    .map(|p| p.map_coeffs(crate::coeff::Rationals, |c| Some(c.to_rational())).unwrap())
                    .collect(),
            );
            let r = modular_resultant(&lifted, plan, seed)?;
            r.map_coeffs(field.clone(), |c| K::from_rational(&field, c))
                .ok_or_else(|| Error::Reconstruction("denominator vanishes in the field".into()))
        }
        ModularPlan::Lift => lift_over_primes(sys, plan, seed),
    }
}

fn lift_over_primes<K: Scalar>(
    sys: &MacaulaySystem<K>,
    plan: &MacaulayPlan,
    seed: u64,
) -> Result<Polynomial<K>> {
    let field = sys.field().clone();
    let np = sys.nparams();
    let mut images: Vec<(u64, Polynomial<Fp>)> = Vec::new();
    let mut previous: Option<Polynomial<K>> = None;
    let mut primes = modular_primes();
    for _ in 0..64 {
        let q = primes.next().unwrap();
        let Some(red) = reduce_system(sys, q) else {
            continue;
        };
        images.push((q, image_mod_prime(&red, plan, seed)?));
        let candidate = combine(&images, np, &field);
        if let (Some(c), Some(p)) = (&candidate, &previous) {
            if c == p && verify(sys, plan, c, &mut primes, seed)? {
                return Ok(c.clone());
            }
        }
        previous = candidate;
    }
    Err(Error::Reconstruction("coefficients did not stabilize within 64 primes".into()))
}

fn combine<K: Scalar>(
    images: &[(u64, Polynomial<Fp>)],
    np: usize,
    field: &K::Field,
) -> Option<Polynomial<K>> {
    let mut monos: Vec<Monomial> = images.iter().flat_map(|(_, p)| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let mut terms = Vec::with_capacity(monos.len());
    for m in monos {
        let res: Vec<(u64, u64)> = images.iter().map(|(q, p)| (*q, p.coeff(&m).value())).collect();
        terms.push((m, K::lift(field, &res)?));
    }
    Some(Polynomial::from_terms(np, field.clone(), terms))
}

/// Compares the candidate with a direct evaluation at a random point modulo
/// a prime that took no part in the reconstruction.
fn verify<K: Scalar>(
    sys: &MacaulaySystem<K>,
    plan: &MacaulayPlan,
    candidate: &Polynomial<K>,
    primes: &mut impl Iterator<Item = u64>,
    seed: u64,
) -> Result<bool> {
    for q in primes.by_ref().take(8) {
        let (Some(red), Some(cand)) = (
            reduce_system(sys, q),
            candidate.map_coeffs(PrimeField::new(q), |c| c.residue(q).map(|v| PrimeField::new(q).elem(v))),
        ) else {
            continue;
        };
        let f = PrimeField::new(q);
        let mut rng = seeded_rng(seed ^ q.rotate_left(7));
        let point: Vec<Fp> = (0..sys.nparams()).map(|_| f.elem(rng.gen_range(0..q))).collect();
        let split = split_forms(&red, plan);
        let dense = specialize(&split, plan, &point, &f);
        let (direct, _) = plan.resultant(&dense, &f, seed, true)?;
        return Ok(cand.evaluate(&point)? == direct);
    }
    Err(Error::Verification("no usable verification prime".into()))
}
