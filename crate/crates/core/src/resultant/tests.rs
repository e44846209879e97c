use super::*;
use crate::coeff::{Fp, PrimeField, Rational, Rationals};
use crate::mpoly::parse_poly;

fn q(s: &str, nv: usize) -> Polynomial<Rational> {
    parse_poly(s, nv, &Rationals).unwrap()
}

fn numeric(forms: &[&str]) -> Rational {
    let polys = forms.iter().map(|s| q(s, forms.len())).collect();
    let sys = MacaulaySystem::new(polys).unwrap();
    macaulay_resultant(&sys, ResultantStrategy::default()).unwrap().value.constant_value().unwrap_or_default()
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

#[test]
fn sylvester_examples() {
    assert!(sylvester_resultant(&q("x0", 2), &q("x1", 2)).unwrap().is_one());
    assert!(sylvester_resultant(&q("x0^2-x1^2", 2), &q("x0-x1", 2)).unwrap().is_zero());
    // a x0 + b x1, c x0 + d x1 with parameters a, b, c, d
    let p = q("x2*x0 + x3*x1", 6);
    let s = q("x4*x0 + x5*x1", 6);
    assert_eq!(sylvester_resultant(&p, &s).unwrap(), q("x0*x3 - x1*x2", 4));
    assert!(sylvester_resultant(&q("x0^2+x0*x2", 3), &q("x1", 3)).is_err());
}

#[test]
fn macaulay_normalization_and_example() {
    assert_eq!(numeric(&["x0^2", "x1^2", "x2^2"]), r(1));
    assert_eq!(numeric(&["x0^3", "x1", "x2^2"]), r(1));
    // all-ones quadratic family: abc(abc + alpha beta gamma)^3 = 8
    assert_eq!(numeric(&["x^2+y*z", "y^2+x*z", "z^2+x*y"]), r(8));
    assert_eq!(numeric(&["x^2+y*z", "y^2+x*z", "z^2-x*y"]), r(0));
}

#[test]
fn planted_common_zero_vanishes() {
    let f = PrimeField::new(10007);
    // all three quadrics vanish at (1:2:3)
    let forms: Vec<Polynomial<Fp>> = ["y*z - 6*x^2", "y^2 - 4*x^2", "z^2 - 9*x^2 + x*y - 2*x^2"]
        .iter()
        .map(|s| parse_poly(s, 3, &f).unwrap())
        .collect();
    for g in &forms {
        assert!(g.evaluate(&[f.elem(1), f.elem(2), f.elem(3)]).unwrap().is_zero());
    }
    let out = macaulay_resultant(&MacaulaySystem::new(forms).unwrap(), ResultantStrategy::default()).unwrap();
    assert!(out.value.is_zero());
}

#[test]
fn sylvester_matches_macaulay_for_binary_forms() {
    let a = q("2*x0^2 - 3*x0*x1 + 5*x1^2", 2);
    let b = q("x0^3 + x0*x1^2 - 4*x1^3", 2);
    let syl = sylvester_resultant(&a, &b).unwrap();
    let mac = macaulay_resultant(&MacaulaySystem::new(vec![a, b]).unwrap(), ResultantStrategy::default())
        .unwrap()
        .value;
    assert_eq!(syl, mac);
}

#[test]
fn discriminants() {
    let quad = q("x2*x0^2 + x3*x0*x1 + x4*x1^2", 5);
    assert_eq!(discriminant_binary(&quad).unwrap(), q("x1^2 - 4*x0*x2", 3));
    assert!(discriminant_binary(&q("x0^2 - 2*x0*x1 + x1^2", 2)).unwrap().is_zero());
    assert!(!discriminant_binary(&q("x0*x1", 2)).unwrap().is_zero());
    let cubic = q("x0^3 + x2*x0*x1^2 + x3*x1^3", 4);
    assert_eq!(discriminant_binary(&cubic).unwrap(), q("-4*x0^3 - 27*x1^2", 2));
    assert!(discriminant_binary(&q("x0 + x1", 2)).is_err());
}

#[test]
fn gradient_resultants() {
    let fermat = gradient_resultant(&q("x0^3+x1^3+x2^3", 3), 3, ResultantStrategy::default()).unwrap();
    assert!(!fermat.value.is_zero());
    let sing = gradient_resultant(&q("x0^2*x1", 3), 3, ResultantStrategy::default()).unwrap();
    assert!(sing.value.is_zero());
}

#[test]
fn parametric_strategies_agree() {
    // Example-style family with parameters a, b, c, al, be, ga in x3..x8
    let src = ["x3*x0^2 + x6*x1*x2", "x4*x1^2 + x7*x0*x2", "x5*x2^2 + x8*x0*x1"];
    let f = PrimeField::new(1_000_003);
    let forms: Vec<Polynomial<Fp>> = src.iter().map(|s| parse_poly(s, 9, &f).unwrap()).collect();
    let expected: Polynomial<Fp> = parse_poly("x0*x1*x2*(x0*x1*x2 + x3*x4*x5)^3", 6, &f).unwrap();
    let groups = vec![vec![0, 1, 2], vec![3, 4, 5]];
    let sys = MacaulaySystem::with_param_groups(forms.clone(), 3, groups).unwrap();
    let modular = macaulay_resultant(&sys, ResultantStrategy { strategy: Strategy::Modular, ..Default::default() })
        .unwrap();
    assert_eq!(modular.mode, ResultantMode::ModularInterpolation);
    assert_eq!(modular.value, expected);
    let single = MacaulaySystem::with_params(forms, 3).unwrap();
    let ratio = macaulay_resultant(&single, ResultantStrategy { strategy: Strategy::Ratio, ..Default::default() })
        .unwrap();
    assert_eq!(ratio.value, expected);
}

#[test]
fn parametric_over_rationals_lifts() {
    let forms = vec![q("x0 + x2*x1", 3), q("x0 - 2*x1", 3)];
    let sys = MacaulaySystem::with_params(forms.clone(), 2).unwrap();
    let out = macaulay_resultant(&sys, ResultantStrategy::default()).unwrap();
    assert_eq!(out.value, sylvester_resultant(&forms[0], &forms[1]).unwrap());
    assert_eq!(out.value, q("-2 - x0", 1));
}

#[test]
fn small_field_goes_through_rationals() {
    let f = PrimeField::new(5);
    let forms: Vec<Polynomial<Fp>> = ["x0^2 + x2*x1^2", "x1^2 + x0*x1"].iter().map(|s| parse_poly(s, 3, &f).unwrap()).collect();
    let sys = MacaulaySystem::with_params(forms.clone(), 2).unwrap();
    let out = macaulay_resultant(&sys, ResultantStrategy::default()).unwrap();
    assert_eq!(out.value, sylvester_resultant(&forms[0], &forms[1]).unwrap());
}

#[test]
fn degenerate_minor_without_fallback_is_an_error() {
    let sys = MacaulaySystem::new(vec![q("y^2", 3), q("x^2+z^2", 3), q("z^2", 3)]).unwrap();
    let err = macaulay_resultant(&sys, ResultantStrategy { fallback: false, ..Default::default() }).unwrap_err();
    assert_eq!(err.code(), "degenerate-minor");
    let ok = macaulay_resultant(&sys, ResultantStrategy::default()).unwrap();
    assert_ne!(ok.mode, ResultantMode::DirectRatio);
    assert!(ok.value.constant_value().unwrap() == r(1) || ok.value.constant_value().unwrap() == r(-1));
}

#[test]
fn invalid_systems() {
    assert!(MacaulaySystem::new(vec![q("x0^2+x1", 2), q("x1", 2)]).is_err());
    assert!(MacaulaySystem::<Rational>::new(vec![]).is_err());
    assert!(MacaulaySystem::with_params(vec![q("x0", 2), q("x1", 2)], 1).is_err());
    assert!(MacaulaySystem::new(vec![q("0", 2), q("x1", 2)]).is_err());
    assert_eq!("modular".parse::<Strategy>().unwrap(), Strategy::Modular);
    assert!("fast".parse::<Strategy>().is_err());
}
