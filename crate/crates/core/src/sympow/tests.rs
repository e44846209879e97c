use super::*;
use crate::coeff::{Fp, PrimeField, Rational, Rationals};
use crate::mpoly::parse_poly;
use num_bigint::BigInt;

fn qmap(forms: &[&str]) -> Endomorphism<Rational> {
    Endomorphism::new(forms.iter().map(|s| parse_poly(s, forms.len(), &Rationals).unwrap()).collect()).unwrap()
}

fn fpmap(p: u64, forms: &[&str]) -> Endomorphism<Fp> {
    let f = PrimeField::new(p);
    Endomorphism::new(forms.iter().map(|s| parse_poly(s, forms.len(), &f).unwrap()).collect()).unwrap()
}

fn qpt(a: i64, b: i64) -> ProjectivePoint<Rational> {
    ProjectivePoint::from_i64(&Rationals, &[a, b]).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn vieta_examples() {
    // roots 0 = (0:1) and oo = (1:0) give x*y up to sign
    let phi = vieta(&[qpt(0, 1), qpt(1, 0)]).unwrap();
    assert_eq!(phi.to_binary_form(), parse_poly("x0*x1", 2, &Rationals).unwrap());
    // roots 1, 2: (x - y)(x - 2y)
    let phi = vieta(&[qpt(1, 1), qpt(2, 1)]).unwrap();
    assert_eq!(phi.to_binary_form(), parse_poly("x0^2 - 3*x0*x1 + 2*x1^2", 2, &Rationals).unwrap());
    let swapped = vieta(&[qpt(2, 1), qpt(1, 1)]).unwrap();
    assert_eq!(phi, swapped);
    assert!(vieta::<Rational>(&[]).is_err());
}

#[test]
fn symmetric_square_of_squaring() {
    let big = symmetric_power(&qmap(&["x0^2", "x1^2"]), 2).unwrap();
    let expected = ["x0^2", "2*x0*x2 - x1^2", "x2^2"].map(|s| parse_poly(s, 3, &Rationals).unwrap());
    assert_eq!(big.forms(), &expected);
}

#[test]
fn symmetric_power_pushes_roots_forward() {
    let p = 1_000_003;
    let field = PrimeField::new(p);
    let maps = [
        fpmap(p, &["x0^2 + 3*x1^2", "x0*x1"]),
        fpmap(p, &["x0^3 - x1^3", "2*x0*x1^2 + x1^3"]),
        fpmap(p, &["x1^2 - x0^2", "x0^2"]),
    ];
    let mut rng = seeded_rng(7);
    for f in &maps {
        for n in 1..=3 {
            let big = symmetric_power(f, n).unwrap();
            assert_eq!(big.d(), f.d());
            for _ in 0..10 {
                let pts: Vec<_> =
                    (0..n).map(|_| ProjectivePoint::affine(&field, Fp::random(&field, &mut rng))).collect();
                let images: Vec<_> = pts.iter().map(|pt| f.apply(pt).unwrap()).collect();
                let lhs = big.apply(&vieta(&pts).unwrap().to_point()).unwrap();
                assert_eq!(lhs, vieta(&images).unwrap().to_point());
            }
        }
    }
}

#[test]
fn symmetric_power_commutes_with_iteration() {
    let p = 1_000_003;
    for f in [fpmap(p, &["x0^2 + 3*x1^2", "x0*x1"]), fpmap(p, &["x0^2 - x0*x1", "x1^2 + 5*x0^2"])] {
        let lhs = symmetric_power(&f, 2).unwrap().iterate(2).unwrap();
        let rhs = symmetric_power(&f.iterate(2).unwrap(), 2).unwrap();
        let unit = |g: &Endomorphism<Fp>| g.forms()[0].content_unit().unwrap();
        let scale = unit(&lhs) / unit(&rhs);
        for (a, b) in lhs.forms().iter().zip(rhs.forms()) {
            assert_eq!(*a, b.scale(&scale));
        }
    }
}

#[test]
fn fhp_holds_and_fails_for_a_wrong_map() {
    let p = 10_007;
    let f = fpmap(p, &["x0^2 + x1^2", "x0*x1"]);
    let big = symmetric_power(&f, 3).unwrap();
    let pt = ProjectivePoint::from_i64(&PrimeField::new(p), &[5, 1]).unwrap();
    assert!(check_fhp(&f, &big, &pt, 20, 1).unwrap());
    let wrong = fpmap(p, &["x0^2 + 2*x1^2", "x0*x1"]);
    assert!(!check_fhp(&wrong, &big, &pt, 20, 1).unwrap());
}

#[test]
fn collisions() {
    let f = qmap(&["x0^2", "x1^2"]);
    assert!(collision_locus_member(&f, &[qpt(1, 1), qpt(-1, 1)]).unwrap());
    assert!(!collision_locus_member(&f, &[qpt(1, 1), qpt(2, 1)]).unwrap());
    assert!(!collision_locus_member(&f, &[qpt(1, 1), qpt(1, 1)]).unwrap());
}

#[test]
fn critical_points_need_a_split_jacobian() {
    let pts = critical_points(&qmap(&["x0^2", "x1^2"])).unwrap();
    assert_eq!(pts.len(), 2);
    assert_eq!(critical_points(&qmap(&["x0^2 + x1^2", "x0*x1 + x1^2"])).unwrap_err().code(), "unsupported");
}

#[test]
fn structure_check_on_squaring() {
    let f = fpmap(1_000_003, &["x0^2", "x1^2"]);
    let report = critical_locus_structure_check(&f, 2, 20, 3).unwrap();
    assert!(report.all_passed(), "{report:?}");
}

#[test]
fn admissible_period_sets() {
    let set = |s, n| admissible_periods(s, n).unwrap().into_iter().collect::<Vec<_>>();
    assert_eq!(set(1, 2), vec![1, 2]);
    assert_eq!(set(2, 2), vec![1, 2, 4]);
    assert_eq!(set(3, 3), vec![1, 2, 3, 6, 9]);
    assert!(admissible_periods(0, 1).is_err());
}

#[test]
fn periodic_critical_forms() {
    let sq = qmap(&["x0^2", "x1^2"]);
    let phi = periodic_critical_form(&sq, &qpt(0, 1), &qpt(1, 1), 1, 1, 2).unwrap();
    assert_eq!(phi, vieta(&[qpt(0, 1), qpt(1, 1)]).unwrap());
    assert_eq!(periodic_critical_form(&sq, &qpt(2, 1), &qpt(1, 1), 1, 1, 2).unwrap_err().code(), "precondition");
    assert_eq!(periodic_critical_form(&sq, &qpt(0, 1), &qpt(2, 1), 1, 1, 2).unwrap_err().code(), "precondition");

    // z^-2 - 1: 0 -> oo -> -1 -> 0, with a fixed point over F_11
    let p = 11;
    let field = PrimeField::new(p);
    let f = fpmap(p, &["x1^2 - x0^2", "x0^2"]);
    let q = ProjectivePoint::enumerate(&field, 1).unwrap().into_iter().find(|q| f.apply(q).unwrap() == *q).unwrap();
    let zero = ProjectivePoint::from_i64(&field, &[0, 1]).unwrap();
    let phi = periodic_critical_form(&f, &zero, &q, 3, 1, 2).unwrap();
    assert_eq!(phi, vieta(&[zero.clone(), q.clone()]).unwrap());
    assert!(periodic_critical_form(&f, &zero, &q, 2, 1, 2).is_err());
}

#[test]
fn period_polynomials() {
    assert_eq!(period_polynomial(2, 2).unwrap().coeffs, ints(&[0, 1]));
    assert_eq!(period_polynomial(2, 3).unwrap().coeffs, ints(&[1, 0, 0, 1]));
    assert_eq!(period_polynomial(2, 4).unwrap().coeffs, ints(&[0, 1, 0, 0, 3, 0, 0, 1]));
    for d in 2..=3u32 {
        for s in 2..=5u32 {
            let expected: u32 = (0..s - 1).map(|k| d.pow(k)).sum();
            assert_eq!(period_polynomial(d, s).unwrap().degree(), expected as usize);
        }
    }
    assert!(period_polynomial(2, 1).is_err());
}

#[test]
fn pcf_parameters() {
    let c2 = find_pcf_parameter::<Rational>(2, 2, &Rationals).unwrap().unwrap();
    assert_eq!(c2.c, Rational::from_integer(0.into()));
    let c3 = find_pcf_parameter::<Rational>(2, 3, &Rationals).unwrap().unwrap();
    assert_eq!(c3.c, Rational::from_integer((-1).into()));
    assert_eq!(c3.orbit.period, Some(3));
    assert!(find_pcf_parameter::<Rational>(2, 5, &Rationals).unwrap().is_none());
    let f17 = PrimeField::new(17);
    let c5 = find_pcf_parameter::<Fp>(2, 5, &f17).unwrap().unwrap();
    assert_eq!(c5.orbit.period, Some(5));
    assert!(find_pcf_parameter::<Rational>(2, 4, &Rationals).is_err());
}

#[test]
fn bicritical_maps_have_no_periodic_critical_points() {
    let f = bicritical_wanderer(2, Rational::from_integer((-1).into())).unwrap();
    assert_eq!(f.forms()[0], parse_poly("x0^2 - 2*x1^2", 2, &Rationals).unwrap());
    let f7 = PrimeField::new(7);
    let zeta = primitive_root_of_unity::<Fp>(3, &f7).unwrap();
    assert!(zeta == f7.elem(2) || zeta == f7.elem(4));
    let g = bicritical_wanderer(3, zeta).unwrap();
    for s in 1..=4 {
        assert!(!crate::dynamics::has_periodic_critical_point(&g, s).unwrap().value);
    }
    assert!(bicritical_wanderer(2, Rational::from_integer(1.into())).is_err());
}
