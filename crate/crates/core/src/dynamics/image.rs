//! Images of hypersurfaces and the improperness certificates built from them.
//!
//! The image of `V(Phi)` under `f` is cut out by eliminating `x` from
//! `Phi(x) = 0` and `y_a f_j(x) = y_j f_a(x)` (`j != a`) for an anchor
//! coordinate `a`. For `n >= 2` the result also vanishes on `y_a = 0`
//! (there the equations only require `f_a(x) = 0`), so each anchor's output
//! is stripped of monomial factors, two anchors are combined by a gcd, and a
//! coordinate `y_v` is kept as a factor only when it divides the output for
//! an anchor other than `v`.

use rayon::prelude::*;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::mpoly::{content_wrt, div_exact, gcd, squarefree_part, Monomial, Polynomial};
use crate::resultant::{macaulay_resultant, MacaulaySystem, ResultantMode, ResultantOutcome, ResultantStrategy};

use super::{Endomorphism, HypersurfaceForm, IndexTuple};

/// Result of [`pushforward_detailed`].
#[derive(Debug, Clone)]
pub struct Pushforward<K: Scalar> {
    /// Reduced defining form of the image.
    pub form: HypersurfaceForm<K>,
    /// Elimination output for anchor 0, before any reduction: the image
    /// counted with multiplicity, times a power of `y_0` when `n >= 2`.
    pub raw: Polynomial<K>,
    pub mode: ResultantMode,
}

/// Brings `f` and `phi` into one ring; returns the map, the form and the
/// number of parameters.
fn common_ring<K: Scalar>(
    f: &Endomorphism<K>,
    phi: &HypersurfaceForm<K>,
) -> Result<(Endomorphism<K>, Polynomial<K>, usize)> {
    if phi.nmain() != f.n() + 1 {
        return Err(Error::Arity { expected: f.n() + 1, got: phi.nmain() });
    }
    let (fp, pp) = (f.nparams(), phi.nparams());
    if fp > 0 && pp > 0 && fp != pp {
        return Err(Error::RingMismatch("map and form have different parameters".into()));
    }
    let nv = f.nvars().max(phi.form().nvars());
    let map: Vec<usize> = (0..phi.form().nvars()).collect();
    Ok((f.extend_ring(nv)?, phi.form().remap(nv, &map), fp.max(pp)))
}

/// Elimination output for one anchor, in the ring `(y_0..y_n, params)`.
fn eliminate<K: Scalar>(
    f: &Endomorphism<K>,
    phi: &Polynomial<K>,
    np: usize,
    anchor: usize,
    strategy: ResultantStrategy,
) -> Result<ResultantOutcome<K>> {
    let n1 = f.n() + 1;
    let total = 2 * n1 + np;
    let field = f.field().clone();
    // x stays in place, parameters move behind y
    let into: Vec<usize> = (0..n1).chain((0..np).map(|k| 2 * n1 + k)).collect();
    let phi = phi.remap(total, &into);
    let fs: Vec<Polynomial<K>> = f.forms().iter().map(|g| g.remap(total, &into)).collect();
    let y = |j: usize| Polynomial::var(total, field.clone(), n1 + j);
    let mut forms = vec![phi];
    for j in (0..n1).filter(|&j| j != anchor) {
        forms.push(&(&y(anchor) * &fs[j]) - &(&y(j) * &fs[anchor]));
    }
    let mut groups = vec![(0..n1).collect::<Vec<_>>()];
    if np > 0 {
        groups.push((n1..n1 + np).collect());
    }
    let sys = MacaulaySystem::with_param_groups(forms, n1, groups)?;
    macaulay_resultant(&sys, strategy)
}

/// Image of `V(phi)` under `f` with the raw elimination output.
pub fn pushforward_detailed<K: Scalar>(
    f: &Endomorphism<K>,
    phi: &HypersurfaceForm<K>,
    strategy: ResultantStrategy,
) -> Result<Pushforward<K>> {
    f.require_morphism()?;
    let (f, phi_form, np) = common_ring(f, phi)?;
    let n1 = f.n() + 1;
    let yvars: Vec<usize> = (0..n1).collect();
    let first = eliminate(&f, &phi_form, np, 0, strategy)?;
    if first.value.is_zero() {
        return Err(Error::VanishingElimination("the image resultant vanished identically".into()));
    }
    let raw = first.value.clone();
    let primitive = |r: &Polynomial<K>| -> Polynomial<K> {
        let c = content_wrt(r, &yvars);
        div_exact(r, &c).expect("content divides")
    };
    let reduced = if n1 == 2 {
        primitive(&raw)
    } else {
        let second = eliminate(&f, &phi_form, np, 1, strategy)?;
        if second.value.is_zero() {
            return Err(Error::VanishingElimination("the image resultant vanished identically".into()));
        }
        let mut genuine = Monomial::one(raw.nvars());
        let mut parts = Vec::new();
        for (anchor, r) in [(0, &first.value), (1, &second.value)] {
            let mc = r.monomial_content();
            for v in (0..n1).filter(|&v| v != anchor && mc.exps()[v] > 0) {
                genuine.exps_mut()[v] = 1;
            }
            parts.push(primitive(&r.div_monomial(&mc).unwrap()));
        }
        let common = if parts[0].equal_up_to_scalar(&parts[1]) {
            parts[0].clone()
        } else {
            gcd(&parts[0], &parts[1])
        };
        common.mul_monomial(&genuine)
    };
    let form = squarefree_part(&reduced)?;
    let bound = phi.degree() * f.d().pow(f.n() as u32 - 1);
    let deg = form.terms().next().map_or(0, |(m, _)| m.degree_in(&yvars));
    if deg == 0 {
        return Err(Error::VanishingElimination("the image form is constant".into()));
    }
    if deg > bound {
        return Err(Error::Verification(format!("image degree {deg} exceeds the bound {bound}")));
    }
    Ok(Pushforward { form: HypersurfaceForm::with_params(form, n1)?, raw, mode: first.mode })
}

/// Reduced defining form of `f(V(phi))`.
pub fn pushforward<K: Scalar>(
    f: &Endomorphism<K>,
    phi: &HypersurfaceForm<K>,
    strategy: ResultantStrategy,
) -> Result<HypersurfaceForm<K>> {
    pushforward_detailed(f, phi, strategy).map(|p| p.form)
}

/// `[phi, f_* phi, ..., f^k_* phi]` by repeated pushforward.
pub fn pushforward_chain<K: Scalar>(
    f: &Endomorphism<K>,
    phi: &HypersurfaceForm<K>,
    k: u32,
    strategy: ResultantStrategy,
) -> Result<Vec<HypersurfaceForm<K>>> {
    let mut out = vec![phi.clone()];
    for _ in 0..k {
        let next = pushforward(f, out.last().unwrap(), strategy)?;
        out.push(next);
    }
    Ok(out)
}

fn certificate_from_chain<K: Scalar>(
    chain: &[HypersurfaceForm<K>],
    indices: &IndexTuple,
    strategy: ResultantStrategy,
) -> Result<ResultantOutcome<K>> {
    let nmain = chain[0].nmain();
    let nv = chain.iter().map(|h| h.form().nvars()).max().unwrap();
    let forms = indices
        .indices()
        .iter()
        .map(|&i| {
            let p = chain[i as usize].form();
            p.remap(nv, &(0..p.nvars()).collect::<Vec<_>>())
        })
        .collect();
    macaulay_resultant(&MacaulaySystem::with_params(forms, nmain)?, strategy)
}

/// Resultant of `f^{i_0}_* phi, ..., f^{i_n}_* phi`: zero exactly when the
/// images share a point over the algebraic closure.
pub fn improper_certificate<K: Scalar>(
    f: &Endomorphism<K>,
    phi: &HypersurfaceForm<K>,
    indices: &IndexTuple,
    strategy: ResultantStrategy,
) -> Result<ResultantOutcome<K>> {
    if indices.len() != f.n() + 1 {
        return Err(Error::Arity { expected: f.n() + 1, got: indices.len() });
    }
    let chain = pushforward_chain(f, phi, indices.last(), strategy)?;
    certificate_from_chain(&chain, indices, strategy)
}

/// Outcome of a bounded witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witness: Option<IndexTuple>,
    pub bound: u32,
    pub checked: usize,
}

/// The lexicographically least tuple with `i_n <= bound` whose certificate
/// vanishes. Certificates are evaluated in parallel.
pub fn search_improper_witness<K: Scalar>(
    f: &Endomorphism<K>,
    phi: &HypersurfaceForm<K>,
    bound: u32,
    strategy: ResultantStrategy,
) -> Result<WitnessSearch> {
    let len = f.n() + 1;
    let tuples = IndexTuple::all_up_to(len, bound);
    if tuples.is_empty() {
        return Ok(WitnessSearch { witness: None, bound, checked: 0 });
    }
    let chain = pushforward_chain(f, phi, bound, strategy)?;
    let verdicts: Vec<bool> = tuples
        .par_iter()
        .map(|t| certificate_from_chain(&chain, t, strategy).map(|c| c.value.is_zero()))
        .collect::<Result<_>>()?;
    let witness = tuples.iter().zip(&verdicts).find(|(_, &v)| v).map(|(t, _)| t.clone());
    Ok(WitnessSearch { witness, bound, checked: tuples.len() })
}
