//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;

use delta_kernel::algebra::{rat, MultiPoly, RatFunc, Rational, TermOrder};
use delta_kernel::diff_ring::{AutoreducedSet, CoeffField, DiffPoly, DiffRing};
use delta_kernel::initial_sets::ExpPoint;

/// A ring with `m ≤ 3`, `n ≤ 2`, over `Q` or over `Q(t1)` with `δ_k t1 = [k = 1]`.
pub fn random_ring<R: Rng>(rng: &mut R) -> Arc<DiffRing> {
    let m = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=2);
    if rng.gen_bool(0.25) {
        DiffRing::new(m, n, CoeffField::partials(1, m))
    } else {
        DiffRing::over_q(m, n)
    }
}

fn random_coeff<R: Rng>(rng: &mut R, ring: &Arc<DiffRing>) -> RatFunc {
    let s = ring.field().params();
    let c = Rational::from_integer(rng.gen_range(-4i64..=4).into());
    if s == 0 || rng.gen_bool(0.6) {
        return RatFunc::constant(s, c);
    }
    let t = RatFunc::var(s, 0);
    let b = RatFunc::constant(s, Rational::from_integer(rng.gen_range(1i64..=3).into()));
    (&t.scale(&c) + &b).checked_div(&(&t + &RatFunc::one(s))).expect("nonzero denominator")
}

/// A random derivative index of order at most `max_order`.
pub fn random_exps<R: Rng>(rng: &mut R, m: usize, max_order: u32) -> Vec<u32> {
    let mut exps = vec![0u32; m];
    let order = rng.gen_range(0..=max_order);
    for _ in 0..order {
        exps[rng.gen_range(0..m)] += 1;
    }
    exps
}

/// A random differential polynomial of order `≤ max_order` and total
/// degree `≤ max_deg` with at most `max_terms` terms.
pub fn random_diff_poly<R: Rng>(rng: &mut R, ring: &Arc<DiffRing>, max_order: u32, max_deg: u32, max_terms: usize) -> DiffPoly {
    let (m, n) = (ring.m(), ring.n());
    let mut f = DiffPoly::zero(ring);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let deg = rng.gen_range(0..=max_deg);
        let mut term = DiffPoly::coeff(ring, random_coeff(rng, ring));
        for _ in 0..deg {
            let exps = random_exps(rng, m, max_order);
            let var = rng.gen_range(1..=n);
            term = &term * &DiffPoly::indet(ring, ring.indet(&exps, var));
        }
        f = &f + &term;
    }
    f
}

/// A random autoreduced set with one or two elements, drawn by rejection.
pub fn random_autoreduced<R: Rng>(rng: &mut R, ring: &Arc<DiffRing>, max_order: u32) -> AutoreducedSet {
    loop {
        let size = rng.gen_range(1..=2);
        let elems: Vec<DiffPoly> = (0..size).map(|_| random_diff_poly(rng, ring, max_order, 2, 3)).collect();
        if let Ok(set) = AutoreducedSet::new(ring, elems) {
            return set;
        }
    }
}

/// A random element of `Q(t)` with numerator and denominator degree `≤ deg`.
pub fn random_ratfunc_t<R: Rng>(rng: &mut R, deg: u32) -> RatFunc {
    let poly = |rng: &mut R, monic: bool| {
        let d = rng.gen_range(0..=deg);
        let mut p = MultiPoly::zero(1, TermOrder::GrevLex);
        for e in 0..=d {
            let c = if monic && e == d { 1 } else { rng.gen_range(-3i64..=3) };
            let mono = MultiPoly::var(1, TermOrder::GrevLex, 0).pow(e);
            p = &p + &mono.scale(&rat(c, 1));
        }
        p
    };
    loop {
        let num = poly(rng, false);
        let den = poly(rng, true);
        if let Ok(g) = RatFunc::new(num, den) {
            return g;
        }
    }
}

/// The four characteristic sets used throughout: name, set, `ℓ`, removable points.
pub fn corpus() -> Vec<(&'static str, AutoreducedSet, u32, Vec<Vec<u32>>)> {
    let r1 = DiffRing::over_q(1, 1);
    let r2 = DiffRing::over_q(2, 1);
    let v = |r: &Arc<DiffRing>, e: &[u32]| DiffPoly::indet(r, r.indet(e, 1));
    let u1 = v(&r1, &[0]);
    let u2 = v(&r2, &[0, 0]);
    vec![
        ("d1*u1 - u1", AutoreducedSet::new(&r1, vec![&v(&r1, &[1]) - &u1]).unwrap(), 1, vec![vec![0, 1]]),
        ("(d1*u1)^2 - u1", AutoreducedSet::new(&r1, vec![&v(&r1, &[1]).pow(2) - &u1]).unwrap(), 1, vec![vec![0, 1]]),
        ("d2*u1 - d1^2*u1", AutoreducedSet::new(&r2, vec![&v(&r2, &[0, 1]) - &v(&r2, &[2, 0])]).unwrap(), 2, vec![]),
        (
            "{d1^2*u1 - u1, d2^2*u1 - u1}",
            AutoreducedSet::new(&r2, vec![&v(&r2, &[2, 0]) - &u2, &v(&r2, &[0, 2]) - &u2]).unwrap(),
            2,
            vec![vec![1, 1, 1]],
        ),
    ]
}

/// Membership in the initial set, from its definition: no leader point of
/// the same indeterminate lies below `p`.
pub fn in_b(e: &[ExpPoint], p: &ExpPoint) -> bool {
    !e.iter().any(|q| q.j == p.j && q.r.iter().zip(&p.r).all(|(a, b)| a <= b))
}

/// Maximal points of the initial set found by scanning every point of norm
/// at most `bound` and testing each unit step directly.
pub fn maximal_points_by_scan(m: usize, n: usize, e: &[ExpPoint], bound: u32) -> Vec<ExpPoint> {
    let mut out = Vec::new();
    let mut r = vec![0u32; m];
    loop {
        if r.iter().sum::<u32>() <= bound {
            for j in 1..=n {
                let p = ExpPoint::new(r.clone(), j);
                if in_b(e, &p) && (0..m).all(|k| !in_b(e, &p.step(k))) {
                    out.push(p);
                }
            }
        }
        let mut k = 0;
        loop {
            if k == m {
                out.sort();
                return out;
            }
            r[k] += 1;
            if r[k] <= bound {
                break;
            }
            r[k] = 0;
            k += 1;
        }
    }
}
