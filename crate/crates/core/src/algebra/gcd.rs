//! Multivariate GCD over the rationals by recursive content / primitive part
//! and primitive pseudo-remainder sequences.

use super::poly::MultiPoly;

/// Largest-index variable occurring in either polynomial.
fn main_var(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars()).rev().find(|v| a.involves(*v) || b.involves(*v))
}

/// Content of `p` with respect to `var`: the GCD of its coefficients in `var`.
pub fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(p.nvars(), p.order());
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_in(p: &MultiPoly, var: usize) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides the polynomial")
}

/// `lc_var(b)^k * a mod b` with respect to `var`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let lcb = b.lead_coeff_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.involves_degree(var, db) {
        let dr = r.degree_in(var);
        let lcr = r.lead_coeff_in(var);
        let shift = MultiPoly::var(r.nvars(), r.order(), var).pow(dr - db);
        r = &(&lcb * &r) - &(&(&lcr * &shift) * b);
    }
    r
}

impl MultiPoly {
    fn involves_degree(&self, var: usize, d: u32) -> bool {
        self.degree_in(var) >= d
    }
}

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let var = match main_var(a, b) {
        None => return MultiPoly::one(a.nvars(), a.order()),
        Some(v) => v,
    };
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.degree_in(var) == 0 {
            // q is primitive and free of var, hence a unit
            break MultiPoly::one(a.nvars(), a.order());
        }
        let r = pseudo_rem(&p, &q, var);
        if r.is_zero() {
            break q;
        }
        p = q;
        q = primitive_part_in(&r, var);
    };
    (&g * &c).monic()
}

/// Least common multiple, monic.
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.nvars(), a.order());
    }
    let g = gcd(a, b);
    (a * &b.exact_div(&g).expect("gcd divides")).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, TermOrder};

    #[test]
    fn gcd_recovers_common_factor() {
        let o = TermOrder::GrevLex;
        let x = MultiPoly::var(3, o, 0);
        let y = MultiPoly::var(3, o, 1);
        let z = MultiPoly::var(3, o, 2);
        let common = &(&x * &y) - &z;
        let a = &common * &(&x + &y);
        let b = &common * &(&(&y * &y) + &MultiPoly::constant(3, o, rat(3, 1)));
        assert_eq!(gcd(&a, &b), common.monic());
    }

    #[test]
    fn coprime_and_constant_cases() {
        let o = TermOrder::GrevLex;
        let x = MultiPoly::var(2, o, 0);
        let y = MultiPoly::var(2, o, 1);
        assert!(gcd(&x, &y).is_one());
        assert!(gcd(&x.scale(&rat(2, 1)), &MultiPoly::constant(2, o, rat(6, 1))).is_one());
        assert_eq!(gcd(&x.scale(&rat(2, 1)), &(&x * &y)), x);
    }
}
