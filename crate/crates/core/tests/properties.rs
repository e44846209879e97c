use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use projdyn::coeff::{crt_combine, rational_reconstruct, ModularResidueSet};
use projdyn::dynamics::{pushforward, Endomorphism, HypersurfaceForm, ProjectivePoint};
use projdyn::mpoly::{
    det_scalar, determinant_bareiss, determinant_cofactor, div_exact, gcd, squarefree_part, Monomial, PolyMatrix,
};
use projdyn::resultant::ResultantStrategy;
use projdyn::sympow::{admissible_periods, vieta};
use projdyn::{Fp, FpPoly, Polynomial, PrimeField, Scalar};

const P: u64 = 10_007;

fn field() -> PrimeField {
    PrimeField::new(P)
}

fn poly(nvars: usize, terms: Vec<(Vec<u32>, u64)>) -> FpPoly {
    let f = field();
    Polynomial::from_terms(nvars, f.clone(), terms.into_iter().map(|(e, c)| (Monomial::new(&e), f.elem(c))))
}

/// Polynomials in `nvars` variables with exponents below `maxexp`.
fn arb_poly(nvars: usize, maxexp: u32, maxterms: usize) -> impl Strategy<Value = FpPoly> {
    prop::collection::vec((prop::collection::vec(0..maxexp, nvars), 0..P), 0..=maxterms)
        .prop_map(move |t| poly(nvars, t))
}

/// Forms of degree `d` in `nvars` variables.
fn arb_form(nvars: usize, d: u32) -> impl Strategy<Value = FpPoly> {
    let monos = projdyn::mpoly::monomials_of_degree(nvars, d);
    prop::collection::vec(0..P, monos.len()).prop_map(move |cs| {
        poly(nvars, monos.iter().zip(cs).map(|(m, c)| (m.exps().to_vec(), c)).collect())
    })
}

fn arb_map(nvars: usize, d: u32) -> impl Strategy<Value = Endomorphism<Fp>> {
    prop::collection::vec(arb_form(nvars, d), nvars)
        .prop_filter_map("zero or non-morphism", |forms| {
            let f = Endomorphism::new(forms).ok()?;
            f.is_morphism().ok()?.then_some(f)
        })
}

fn arb_point(nvars: usize) -> impl Strategy<Value = ProjectivePoint<Fp>> {
    prop::collection::vec(0..P, nvars)
        .prop_filter_map("zero point", |v| ProjectivePoint::new(v.into_iter().map(|c| field().elem(c)).collect()).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crt_recovers_small_integers(v in -1_000_000_000_000i64..1_000_000_000_000) {
        let moduli = [1_000_003i64, 1_000_033, 1_000_037];
        let set = ModularResidueSet::new(
            moduli.iter().map(|&m| (BigInt::from(v.rem_euclid(m)), BigInt::from(m))).collect(),
        ).unwrap();
        prop_assert_eq!(crt_combine(&set).unwrap(), BigInt::from(v));
    }

    #[test]
    fn rational_reconstruction_inverts_reduction(a in -10_000i64..10_000, b in 1i64..10_000) {
        let m = BigInt::from(1_000_003i64) * BigInt::from(1_000_033i64);
        let inv = BigInt::from(b).modinv(&m).unwrap();
        let image = (BigInt::from(a) * inv) % &m;
        let q = rational_reconstruct(&image, &m).unwrap().unwrap();
        prop_assert_eq!(q, BigRational::new(a.into(), b.into()));
    }

    #[test]
    fn ring_axioms(a in arb_poly(3, 3, 5), b in arb_poly(3, 3, 5), c in arb_poly(3, 3, 5)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_is_a_ring_map(
        a in arb_poly(2, 3, 4),
        b in arb_poly(2, 3, 4),
        g in prop::collection::vec(arb_poly(3, 2, 3), 2),
    ) {
        let lhs = (&a * &b).substitute(&g).unwrap();
        let rhs = &a.substitute(&g).unwrap() * &b.substitute(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = (&a + &b).substitute(&g).unwrap();
        prop_assert_eq!(sum, &a.substitute(&g).unwrap() + &b.substitute(&g).unwrap());
    }

    #[test]
    fn euler_identity(f in arb_form(3, 4)) {
        let mut acc = Polynomial::zero(3, field());
        for i in 0..3 {
            acc = &acc + &(&Polynomial::var(3, field(), i) * &f.partial_derivative(i).unwrap());
        }
        prop_assert_eq!(acc, f.scale(&field().elem(4)));
    }

    #[test]
    fn determinant_backends_agree(entries in prop::collection::vec(0..P, 25)) {
        let f = field();
        let scalars: Vec<Vec<Fp>> = entries.chunks(5).map(|r| r.iter().map(|&c| f.elem(c)).collect()).collect();
        let rows = scalars
            .iter()
            .map(|r| r.iter().map(|c| Polynomial::constant(1, c.clone())).collect())
            .collect();
        let m = PolyMatrix::new(rows).unwrap();
        let cof = determinant_cofactor(&m).unwrap();
        prop_assert_eq!(&cof, &determinant_bareiss(&m).unwrap());
        prop_assert_eq!(cof.constant_value().unwrap_or_else(|| f.elem(0)), det_scalar(scalars, &f));
    }

    #[test]
    fn gcd_contains_common_factor(a in arb_poly(2, 3, 4), b in arb_poly(2, 3, 4), c in arb_poly(2, 2, 3)) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let g = gcd(&(&a * &c), &(&b * &c));
        prop_assert!(div_exact(&g, &c).is_some());
        prop_assert!(div_exact(&(&a * &c), &g).is_some());
        prop_assert!(div_exact(&(&b * &c), &g).is_some());
    }

    #[test]
    fn squarefree_part_ignores_multiplicity(a in arb_poly(2, 3, 4)) {
        prop_assume!(!a.is_zero() && !a.is_constant());
        let s = squarefree_part(&a).unwrap();
        prop_assert!(squarefree_part(&a.pow(3)).unwrap().equal_up_to_scalar(&s));
        prop_assert!(div_exact(&a, &s).is_some());
    }

    #[test]
    fn apply_commutes_with_iterate(f in arb_map(3, 2), p in arb_point(3)) {
        let f2 = f.iterate(2).unwrap();
        let once = f.apply(&p).unwrap();
        prop_assert_eq!(f2.apply(&p).unwrap(), f.apply(&once).unwrap());
    }

    #[test]
    fn vieta_is_multiplicative(xs in prop::collection::vec(0..P, 1..4), ys in prop::collection::vec(0..P, 1..4)) {
        let f = field();
        let pts = |v: &[u64]| v.iter().map(|&t| ProjectivePoint::affine(&f, f.elem(t))).collect::<Vec<_>>();
        let (a, b) = (pts(&xs), pts(&ys));
        let both: Vec<_> = a.iter().chain(&b).cloned().collect();
        let lhs = vieta(&both).unwrap().to_binary_form();
        let rhs = &vieta(&a).unwrap().to_binary_form() * &vieta(&b).unwrap().to_binary_form();
        prop_assert!(lhs.equal_up_to_scalar(&rhs));
    }

    #[test]
    fn admissible_periods_grow_with_n(s in 1u64..8, n in 1u64..6) {
        let small: BTreeSet<u64> = admissible_periods(s, n).unwrap();
        let large = admissible_periods(s, n + 1).unwrap();
        prop_assert!(small.is_subset(&large));
        prop_assert!(small.contains(&s) && large.contains(&((n + 1) * s)));
        prop_assert!((1..=s).filter(|t| s % t == 0).all(|t| small.contains(&t)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn pushforward_is_functorial(f in arb_map(3, 2), l in arb_form(3, 1)) {
        prop_assume!(!l.is_zero());
        let phi = HypersurfaceForm::new(l).unwrap();
        let s = ResultantStrategy::default();
        let twice = pushforward(&f, &pushforward(&f, &phi, s).unwrap(), s).unwrap();
        let direct = pushforward(&f.iterate(2).unwrap(), &phi, s).unwrap();
        prop_assert_eq!(twice.form(), direct.form());
    }

    #[test]
    fn pushforward_contains_images(f in arb_map(3, 2), l in arb_form(3, 1), t in prop::collection::vec(0..P, 2)) {
        prop_assume!(!l.is_zero());
        let phi = HypersurfaceForm::new(l.clone()).unwrap();
        let image = pushforward(&f, &phi, ResultantStrategy::default()).unwrap();
        // a point on the line: solve l = 0 for one coordinate
        let fld = field();
        let pivot = (0..3).find(|&i| !l.coeff(&Monomial::var(3, i, 1)).is_zero()).unwrap();
        let mut coords = vec![fld.elem(0); 3];
        let free: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        for (k, &i) in free.iter().enumerate() {
            coords[i] = fld.elem(t[k]);
        }
        let rest = free.iter().fold(fld.elem(0), |acc, &i| acc + l.coeff(&Monomial::var(3, i, 1)) * coords[i].clone());
        coords[pivot] = -(rest / l.coeff(&Monomial::var(3, pivot, 1)));
        prop_assume!(coords.iter().any(|c| !c.is_zero()));
        let pt = ProjectivePoint::new(coords).unwrap();
        prop_assert!(image.contains(&f.apply(&pt).unwrap()).unwrap());
    }
}
