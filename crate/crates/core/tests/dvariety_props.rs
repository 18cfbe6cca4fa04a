//! Darboux polynomials and first integrals of planar polynomial fields.

use proptest::prelude::*;

use delta_kernel::algebra::{rat, MultiPoly, RatFunc, TermOrder};
use delta_kernel::dvariety::{darboux_search, first_integral_search, is_dconstant, is_dsubvariety, DSpec, DarbouxMethod};

fn xy() -> (MultiPoly, MultiPoly) {
    (MultiPoly::var(2, TermOrder::GrevLex, 0), MultiPoly::var(2, TermOrder::GrevLex, 1))
}

fn k(c: i64) -> MultiPoly {
    MultiPoly::constant(2, TermOrder::GrevLex, rat(c, 1))
}

fn affine(c: [i64; 3]) -> MultiPoly {
    let (x, y) = xy();
    &(&k(c[0]) + &x.scale(&rat(c[1], 1))) + &y.scale(&rat(c[2], 1))
}

fn linear_field() -> impl Strategy<Value = DSpec> {
    (prop::array::uniform3(-2i64..=2), prop::array::uniform3(-2i64..=2))
        .prop_map(|(a, b)| DSpec::new(2, vec![vec![affine(a), affine(b)]], vec![]).unwrap())
}

fn is_darboux(spec: &DSpec, f: &MultiPoly, cofactor: &MultiPoly) -> bool {
    spec.apply(1, f) == cofactor * f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn results_verify_and_multiply(spec in linear_field()) {
        let report = darboux_search(&spec, 2, DarbouxMethod::Auto, true).unwrap();
        for r in &report.results {
            prop_assert!(r.verify(&spec));
            prop_assert!(is_darboux(&spec, &r.f, &r.cofactors[0]));
            prop_assert!(is_dsubvariety(&spec, &[r.f.clone()], true).unwrap().invariant);
        }
        for a in &report.results {
            for b in &report.results {
                if a.degree + b.degree <= 2 {
                    let product = &a.f * &b.f;
                    let cofactor = &a.cofactors[0] + &b.cofactors[0];
                    prop_assert!(is_darboux(&spec, &product, &cofactor));
                    prop_assert!(report.results.iter().any(|r| r.cofactors[0] == cofactor));
                }
            }
        }
    }

    #[test]
    fn eigen_and_groebner_agree(spec in linear_field()) {
        let e = darboux_search(&spec, 2, DarbouxMethod::Eigen, true).unwrap();
        let g = darboux_search(&spec, 2, DarbouxMethod::Groebner, true).unwrap();
        for r in e.results.iter().chain(&g.results) {
            prop_assert!(r.verify(&spec));
        }
        if !e.incomplete && !g.incomplete {
            let fe: Vec<_> = e.results.iter().map(|r| (&r.f, &r.cofactors)).collect();
            let fg: Vec<_> = g.results.iter().map(|r| (&r.f, &r.cofactors)).collect();
            prop_assert_eq!(fe, fg);
        }
    }

    #[test]
    fn first_integrals_are_constants(spec in linear_field()) {
        let fi = first_integral_search(&spec, 2, true).unwrap();
        for p in &fi.polynomial {
            prop_assert!(is_dconstant(&RatFunc::from_poly(p.clone()), &spec).unwrap());
        }
        for r in &fi.rational {
            prop_assert!(!r.is_constant());
            prop_assert!(is_dconstant(r, &spec).unwrap());
        }
    }
}

#[test]
fn rotation_circle() {
    let (x, y) = xy();
    let spec = DSpec::new(2, vec![vec![-&y, x.clone()]], vec![]).unwrap();
    let r = darboux_search(&spec, 2, DarbouxMethod::Auto, true).unwrap();
    assert_eq!(r.results.len(), 1);
    assert_eq!(r.results[0].f, &(&x * &x) + &(&y * &y));
    assert!(r.results[0].cofactors[0].is_zero());
}

#[test]
fn shift_gives_powers_of_y() {
    let (_, y) = xy();
    let spec = DSpec::new(2, vec![vec![k(1), y.clone()]], vec![]).unwrap();
    for d in 1..=4u32 {
        let r = darboux_search(&spec, d, DarbouxMethod::Auto, true).unwrap();
        let fs: Vec<MultiPoly> = r.results.iter().map(|x| x.f.clone()).collect();
        let expected: Vec<MultiPoly> = (1..=d).map(|e| y.pow(e)).collect();
        assert_eq!(fs, expected, "d = {d}");
    }
    for d in 1..=3u32 {
        let fi = first_integral_search(&spec, d, true).unwrap();
        assert!(fi.rational.is_empty(), "d = {d}");
        assert!(fi.polynomial.is_empty(), "d = {d}");
    }
}

#[test]
fn scaling_has_x2_over_y() {
    let (x, y) = xy();
    let spec = DSpec::new(2, vec![vec![x.clone(), y.scale(&rat(2, 1))]], vec![]).unwrap();
    let fi = first_integral_search(&spec, 2, true).unwrap();
    let expected = RatFunc::new(&x * &x, y).unwrap();
    assert!(fi.rational.contains(&expected), "{:?}", fi.rational);
}

#[test]
fn proper_subvariety_and_noncommuting_are_rejected() {
    let (x, y) = xy();
    let on_circle = DSpec::new(2, vec![vec![-&y, x.clone()]], vec![&(&x * &x) + &(&y * &y)]).unwrap();
    assert!(darboux_search(&on_circle, 1, DarbouxMethod::Auto, true).is_err());
    let two = DSpec::new(2, vec![vec![k(1), k(0)], vec![k(0), x.clone()]], vec![]).unwrap();
    assert!(two.check_commuting().is_err());
}
