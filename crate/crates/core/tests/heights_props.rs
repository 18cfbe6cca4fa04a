//! Heights on Q(t) and bounded-height rational solutions of P(x, x') = 0.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_ratfunc_t;
use delta_kernel::algebra::{rat, MultiPoly, RatFunc, Rational, TermOrder};
use delta_kernel::heights::{height_ratfunc, rational_solution_search, OdePoly};

/// `P(x, y, t)` from integer coefficients on `x^a y^b t^c`.
fn ode(terms: &[(i64, [u32; 3])]) -> OdePoly {
    let p = terms.iter().fold(MultiPoly::zero(3, TermOrder::GrevLex), |acc, (c, e)| {
        let mono = (0..3).fold(MultiPoly::constant(3, TermOrder::GrevLex, rat(*c, 1)), |m, v| {
            &m * &MultiPoly::var(3, TermOrder::GrevLex, v).pow(e[v])
        });
        &acc + &mono
    });
    OdePoly::new(&p, 1).unwrap()
}

/// Checks `P(g(t0), g'(t0), t0) = 0` at 40 sample points, computing `g'`
/// by the quotient rule on numerator and denominator.
fn vanishes_pointwise(p: &OdePoly, g: &RatFunc) -> bool {
    let (num, den) = (g.num(), g.den());
    let (dnum, dden) = (num.derivative(0), den.derivative(0));
    let mut checked = 0;
    for k in 0..80i64 {
        let t0 = rat(k - 40, 3);
        let pt = [t0.clone()];
        let q = den.eval(&pt);
        if q == Rational::from_integer(0.into()) {
            continue;
        }
        let x0 = num.eval(&pt) / &q;
        let y0 = (dnum.eval(&pt) * &q - num.eval(&pt) * dden.eval(&pt)) / (&q * &q);
        if p.poly().eval(&[x0, y0, t0]) != Rational::from_integer(0.into()) {
            return false;
        }
        checked += 1;
        if checked == 40 {
            return true;
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn height_axioms(seed in any::<u64>(), n in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_ratfunc_t(&mut rng, 6);
        let g = random_ratfunc_t(&mut rng, 6);
        let (hf, hg) = (height_ratfunc(&f), height_ratfunc(&g));
        prop_assert_eq!(height_ratfunc(&f.pow(n)), n * hf);
        if !f.is_zero() {
            prop_assert_eq!(height_ratfunc(&f.inv().unwrap()), hf);
        }
        prop_assert!(height_ratfunc(&(&f * &g)) <= hf + hg);
        prop_assert!(height_ratfunc(&(&f + &g)) <= hf + hg);
        prop_assert_eq!(hf == 0, f.is_constant());
    }
}

#[test]
fn riccati_has_one_height_one_family() {
    let p = ode(&[(1, [0, 1, 0]), (1, [2, 0, 0])]);
    for d in 1..=3 {
        let report = rational_solution_search(&p, d).unwrap();
        assert_eq!(report.n_obs, Some(1), "D = {d}");
        assert_eq!(report.rejected, 0);
        assert!(report.solutions.iter().any(|s| s.height == 0 && s.solution.is_zero()));
        for s in &report.solutions {
            assert!(vanishes_pointwise(&p, &s.solution), "{:?}", s.solution);
        }
    }
}

#[test]
fn linear_equation_has_only_zero() {
    let p = ode(&[(1, [0, 1, 0]), (-1, [1, 0, 0])]);
    for d in 1..=3 {
        let report = rational_solution_search(&p, d).unwrap();
        let sols: Vec<&RatFunc> = report.solutions.iter().map(|s| &s.solution).collect();
        assert_eq!(sols, vec![&RatFunc::zero(1)], "D = {d}");
    }
}

#[test]
fn search_is_monotone_in_the_bound() {
    let names = ["t".to_string()];
    let equations = [
        ode(&[(1, [0, 1, 0]), (1, [2, 0, 0])]),
        ode(&[(1, [0, 1, 0]), (-1, [0, 0, 0])]),
        ode(&[(1, [1, 1, 1]), (-1, [2, 0, 0])]),
        ode(&[(1, [0, 1, 1]), (-2, [1, 0, 0])]),
    ];
    for p in &equations {
        let reports: Vec<_> = (0..=3).map(|d| rational_solution_search(p, d).unwrap()).collect();
        for pair in reports.windows(2) {
            let (lo, hi) = (&pair[0], &pair[1]);
            assert!(lo.n_obs <= hi.n_obs);
            let sampled = hi.families.iter().any(|f| f.dimension > 0);
            let found: BTreeSet<String> = hi.solutions.iter().map(|s| s.solution.render(&names)).collect();
            for s in &lo.solutions {
                assert!(sampled || found.contains(&s.solution.render(&names)), "{}", s.solution.render(&names));
            }
        }
        for r in &reports {
            assert_eq!(r.rejected, 0);
            for s in &r.solutions {
                assert!(s.height <= r.degree);
                assert!(vanishes_pointwise(p, &s.solution));
            }
        }
    }
}

#[test]
fn t_squared_solves_t_y_minus_2x() {
    let p = ode(&[(1, [0, 1, 1]), (-2, [1, 0, 0])]);
    let report = rational_solution_search(&p, 2).unwrap();
    let t2 = RatFunc::var(1, 0).pow(2);
    assert!(report.solutions.iter().any(|s| s.solution == t2 && s.height == 2));
}
