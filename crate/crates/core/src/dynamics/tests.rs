use super::*;
use crate::coeff::{Fp, PrimeField, Rational, Rationals};
use crate::mpoly::{parse_poly, parse_poly_list};

fn qmap(src: &str) -> Endomorphism<Rational> {
    Endomorphism::new(parse_poly_list(src, &Rationals).unwrap()).unwrap()
}

fn qform(src: &str, nv: usize) -> HypersurfaceForm<Rational> {
    HypersurfaceForm::new(parse_poly(src, nv, &Rationals).unwrap()).unwrap()
}

fn qpt(c: &[i64]) -> ProjectivePoint<Rational> {
    ProjectivePoint::from_i64(&Rationals, c).unwrap()
}

fn st() -> ResultantStrategy {
    ResultantStrategy::default()
}

#[test]
fn construction() {
    let f = qmap("[x^2, y^2, z^2]");
    assert_eq!((f.n(), f.d()), (2, 2));
    assert_eq!(qmap("[x, y/2, -z/3]").d(), 1);
    let mixed = parse_poly_list::<Rational>("[x^2, y]", &Rationals).unwrap();
    assert!(Endomorphism::new(mixed).is_err());
    let inhom = parse_poly_list::<Rational>("[x^2 + y, y^2]", &Rationals).unwrap();
    assert!(Endomorphism::new(inhom).is_err());
    let zero = parse_poly_list::<Rational>("[0, 0]", &Rationals).unwrap();
    assert!(Endomorphism::new(zero).is_err());
}

#[test]
fn iterate_and_apply() {
    let f = qmap("[x^2, y^2, z^2]");
    assert_eq!(f.iterate(1).unwrap(), f);
    assert_eq!(f.iterate(2).unwrap(), qmap("[x^4, y^4, z^4]"));
    let g = qmap("[x, y/2, -z/3]");
    assert_eq!(g.apply(&qpt(&[5, -32, 27])).unwrap(), qpt(&[5, -16, -9]));
    assert_eq!(f.apply(&qpt(&[1, 1, 1])).unwrap(), qpt(&[1, 1, 1]));
    let h = qmap("[x^2 + y*z, y^2 - x*z, z^2 + 2*x*y]");
    let p = qpt(&[2, -1, 3]);
    assert_eq!(h.iterate(2).unwrap().apply(&p).unwrap(), h.apply(&h.apply(&p).unwrap()).unwrap());
    let base = qmap("[x*y, y^2]");
    assert_eq!(base.apply(&qpt(&[1, 0])).unwrap_err().code(), "base-point");
}

#[test]
fn orbits() {
    // z^-2 - 1 as (y^2 - x^2 : x^2): 0 -> oo -> -1 -> 0
    let f = qmap("[y^2 - x^2, x^2]");
    let o = f.orbit(&qpt(&[0, 1]), DEFAULT_MAX_STEPS).unwrap();
    assert_eq!((o.tail, o.period), (Some(0), Some(3)));
    assert_eq!(o.points[1], qpt(&[1, 0]));
    assert_eq!(o.points[2], qpt(&[-1, 1]));
    let sq = qmap("[x^2, y^2, z^2]");
    assert_eq!(sq.orbit(&qpt(&[1, 1, 1]), 5).unwrap().period, Some(1));
    // 1 + (zeta - 1)/z^2 with zeta = -1
    let b = qmap("[x^2 - 2*y^2, x^2]");
    let o = b.orbit(&qpt(&[0, 1]), 10).unwrap();
    assert_eq!((o.tail, o.period), (Some(3), Some(1)));
    assert_eq!(o.points[3], qpt(&[-1, 1]));
    let wander = qmap("[2*x, y]");
    let o = wander.orbit(&qpt(&[1, 1]), 6).unwrap();
    assert_eq!((o.tail, o.points.len()), (None, 7));
}

#[test]
fn jacobians() {
    let sq = qmap("[x^2, y^2, z^2]");
    assert_eq!(sq.jacobian_determinant().unwrap(), parse_poly("8*x*y*z", 3, &Rationals).unwrap());
    let j = sq.jacobian().unwrap();
    assert_eq!(j.form().to_string(), "x0*x1*x2");
    assert_eq!(j.degree(), 3);
    let ex = qmap("[x^2 + y*z, y^2 + x*z, z^2 + x*y]");
    assert_eq!(
        ex.jacobian_determinant().unwrap(),
        parse_poly("2*(5*x*y*z - x^3 - y^3 - z^3)", 3, &Rationals).unwrap()
    );
    assert_eq!(qmap("[x, 2*y]").jacobian().unwrap_err().code(), "invalid-input");
    let f5 = PrimeField::new(5);
    let frob: Endomorphism<Fp> = Endomorphism::new(parse_poly_list("[x^5, y^5]", &f5).unwrap()).unwrap();
    assert_eq!(frob.jacobian().unwrap_err().code(), "zero-jacobian");
}

#[test]
fn conjugation() {
    let f = qmap("[x^2 + y*z, y^2 - x*z, z^2 + 2*x*y]");
    let id: Vec<Vec<Rational>> =
        (0..3).map(|i| (0..3).map(|j| Rational::from_integer(((i == j) as i64).into())).collect()).collect();
    assert_eq!(f.conjugate(&id).unwrap(), f);
    let a: Vec<Vec<Rational>> = [[1, 2, 0], [0, 1, -1], [3, 0, 1]]
        .iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect();
    let g = f.conjugate(&a).unwrap();
    assert_eq!(g.d(), f.d());
    // J_g(A P) = J_f(P)
    let p = [Rational::from_integer(2.into()), Rational::from_integer((-1).into()), Rational::from_integer(5.into())];
    let ap: Vec<Rational> = a.iter().map(|r| r.iter().zip(&p).map(|(x, y)| x * y).sum()).collect();
    assert_eq!(
        g.jacobian_determinant().unwrap().evaluate(&ap).unwrap(),
        f.jacobian_determinant().unwrap().evaluate(&p).unwrap()
    );
    let sing = vec![a[0].clone(), a[0].clone(), a[2].clone()];
    assert!(f.conjugate(&sing).is_err());
}

#[test]
fn pushforward_examples() {
    let f = qmap("[x^2 + 7*y^2, y^2, z^2]");
    let img = pushforward(&f, &qform("x - 3*y", 3), st()).unwrap();
    assert_eq!(img.form().to_string(), "x0-16*x1");
    let sq1 = qmap("[x^2, y^2]");
    assert_eq!(pushforward(&sq1, &qform("x - y", 2), st()).unwrap().form().to_string(), "x0-x1");
    // coordinate hyperplanes map to themselves
    let sq = qmap("[x^2, y^2, z^2]");
    assert_eq!(pushforward(&sq, &qform("x", 3), st()).unwrap().form().to_string(), "x0");
    assert_eq!(pushforward(&sq1, &qform("y", 2), st()).unwrap().form().to_string(), "x1");
    let img = pushforward_detailed(&sq, &qform("x + y + z", 3), st()).unwrap();
    assert_eq!(img.form.degree(), 2);
    let non = qmap("[x^2, x*y, z^2]");
    assert_eq!(pushforward(&non, &qform("x+y", 3), st()).unwrap_err().code(), "not-morphism");
}

#[test]
fn symbolic_line_under_squaring() {
    // phi = a x + b y + c z with a, b, c as parameters
    let phi = HypersurfaceForm::with_params(parse_poly("x0*x3 + x1*x4 + x2*x5", 6, &Rationals).unwrap(), 3).unwrap();
    let img = pushforward(&qmap("[x^2, y^2, z^2]"), &phi, st()).unwrap();
    let expected = parse_poly(
        "x3^4*x0^2 + x4^4*x1^2 + x5^4*x2^2 - 2*(x3^2*x4^2*x0*x1 + x3^2*x5^2*x0*x2 + x4^2*x5^2*x1*x2)",
        6,
        &Rationals,
    )
    .unwrap();
    assert!(img.form().equal_up_to_scalar(&expected));
}

#[test]
fn certificates_and_search() {
    let f = qmap("[x, y/2, -z/3]");
    let phi = qform("x + y + z", 3);
    let t = |v: &[u32]| IndexTuple::new(v.to_vec()).unwrap();
    assert!(improper_certificate(&f, &phi, &t(&[0, 1, 3]), st()).unwrap().value.is_zero());
    assert!(!improper_certificate(&f, &phi, &t(&[0, 1, 2]), st()).unwrap().value.is_zero());
    assert!(!improper_certificate(&f, &phi, &t(&[0, 2, 3]), st()).unwrap().value.is_zero());
    let found = search_improper_witness(&f, &phi, 3, st()).unwrap();
    assert_eq!(found.witness, Some(t(&[0, 1, 3])));
    let sq = qmap("[x^2, y^2, z^2]");
    assert!(improper_certificate(&sq, &qform("x - y", 3), &t(&[0, 1, 2]), st()).unwrap().value.is_zero());
    let w = search_improper_witness(&sq, &qform("15*x - 6*y + z", 3), 2, st()).unwrap();
    assert_eq!(w.witness, Some(t(&[0, 1, 2])));
}

#[test]
fn index_tuples() {
    assert!(IndexTuple::new(vec![0, 0, 1]).is_err());
    let all = IndexTuple::all_up_to(3, 3);
    assert_eq!(all.len(), 4);
    assert_eq!(all[0].indices(), &[0, 1, 2]);
    assert_eq!(all[3].indices(), &[1, 2, 3]);
    assert_eq!("0,1,3".parse::<IndexTuple>().unwrap().to_string(), "(0,1,3)");
}

#[test]
fn fixed_forms_and_periodic_points() {
    let sq = qmap("[x^2, y^2]");
    let phi = fixed_form(&sq, 1).unwrap();
    assert!(phi.form().equal_up_to_scalar(&parse_poly("x*y^2 - y*x^2", 2, &Rationals).unwrap()));
    assert_eq!(fixed_form(&sq, 3).unwrap().degree(), 9);
    let pts = periodic_points(&sq, 1).unwrap();
    assert_eq!(pts.points, vec![qpt(&[0, 1]), qpt(&[1, 1]), qpt(&[1, 0])]);
    let g = qmap("[x^2 - y^2, y^2]");
    let two = fixed_form(&g, 2).unwrap();
    assert!(two.contains(&qpt(&[0, 1])).unwrap());
    assert!(two.contains(&qpt(&[-1, 1])).unwrap());
    let f5 = PrimeField::new(5);
    let sq5: Endomorphism<Fp> = Endomorphism::new(parse_poly_list("[x^2, y^2, z^2]", &f5).unwrap()).unwrap();
    let pts = periodic_points(&sq5, 1).unwrap();
    assert_eq!(pts.scope, SearchScope::Exhaustive { p: 5 });
    // x^2 = x: each coordinate in {0, 1}, up to scaling
    assert_eq!(pts.points.len(), 7);
}

#[test]
fn periodic_critical_points() {
    let g = qmap("[x^2 - y^2, y^2]");
    let v = has_periodic_critical_point(&g, 2).unwrap();
    assert!(v.value);
    assert_eq!(v.witness, Some(qpt(&[0, 1])));
    let h = qmap("[y^2 - x^2, x^2]");
    assert!(has_periodic_critical_point(&h, 3).unwrap().value);
    // period dividing s also divides k s
    for k in 1..=3 {
        assert!(has_periodic_critical_point(&g, 2 * k).unwrap().value);
        assert!(has_periodic_critical_point(&h, 3 * k).unwrap().value);
    }
    let b = qmap("[x^2 - 2*y^2, x^2]");
    for s in 1..=6 {
        assert!(!has_periodic_critical_point(&b, s).unwrap().value, "s = {s}");
    }
    let sq = qmap("[x^2, y^2, z^2]");
    assert_eq!(has_periodic_critical_point(&sq, 1).unwrap_err().code(), "unsupported");
}

#[test]
fn map_specs_round_trip() {
    let f = qmap("[x0, x1/2, -x2/3]");
    let spec = f.to_spec().unwrap();
    let json = serde_json::to_string(&spec).unwrap();
    assert_eq!(json, r#"{"n":2,"d":1,"field":"QQ","forms":["x0","1/2*x1","-1/3*x2"]}"#);
    let back: MapSpec = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_endomorphism::<Rational>(&Rationals).unwrap(), f);
    let f7 = PrimeField::new(7);
    assert!(back.to_endomorphism::<Fp>(&f7).is_err());
}
