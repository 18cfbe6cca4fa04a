//! Dense univariate polynomials over the rationals: rational roots and
//! irreducible factorization.

use std::fmt;

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, TermOrder};
use super::poly::MultiPoly;
use super::Rational;

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer((*c).into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        UniPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Primitive integer polynomial with positive leading coefficient and the
    /// same roots.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let lcm_den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| (c / &content) * &sign).collect()
    }

    /// Square-free part, monic.
    pub fn square_free(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Distinct rational roots in increasing order, each with multiplicity.
    ///
    /// Candidates come from the rational root theorem applied to the primitive
    /// integer form of the square-free part: `p/q` with `p | a_0` and `q | a_n`.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let mut sf = self.square_free();
        let mut roots = Vec::new();
        if sf.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            sf = UniPoly::new(sf.coeffs[1..].to_vec());
        }
        if sf.degree().unwrap_or(0) > 0 {
            let ints = sf.to_primitive_integer();
            let a0 = ints.first().unwrap().abs();
            let an = ints.last().unwrap().abs();
            match (divisors(&a0), divisors(&an)) {
                (Some(ps), Some(qs)) => {
                    for p in &ps {
                        for q in &qs {
                            if !p.gcd(q).is_one() {
                                continue;
                            }
                            for s in [1i32, -1] {
                                let cand = Rational::new(p * BigInt::from(s), q.clone());
                                if sf.eval(&cand).is_zero() {
                                    roots.push(cand);
                                }
                            }
                        }
                    }
                }
                _ => {
                    // coefficients too large to factor by trial division:
                    // read the roots off the linear irreducible factors
                    for (f, _) in sf.factor().1 {
                        if f.degree() == Some(1) {
                            roots.push(-&f.coeffs[0] / &f.coeffs[1]);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
            .into_iter()
            .map(|r| {
                let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
                let mut mult = 0;
                let mut p = self.clone();
                loop {
                    let (q, rem) = p.div_rem(&lin);
                    if !rem.is_zero() {
                        break;
                    }
                    mult += 1;
                    p = q;
                }
                (r, mult)
            })
            .collect()
    }

    /// Irreducible factorization over the rationals: a constant and monic
    /// irreducible factors with multiplicities, sorted by degree then coefficients.
    pub fn factor(&self) -> (Rational, Vec<(UniPoly, usize)>) {
        if self.degree().unwrap_or(0) == 0 {
            return (self.leading(), vec![]);
        }
        let ints = self.to_primitive_integer();
        let poly: Polynomial<BigInt> = ints.into();
        let factors = poly.factor();
        let mut out: Vec<(UniPoly, usize)> = factors
            .polynomial_factors
            .into_iter()
            .map(|f| {
                let coeffs: Vec<Rational> = f
                    .polynomial
                    .into_coefficients()
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect();
                (UniPoly::new(coeffs).monic(), f.power)
            })
            .collect();
        out.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        (self.leading(), out)
    }

    pub fn is_irreducible(&self) -> bool {
        let (_, f) = self.factor();
        f.len() == 1 && f[0].1 == 1
    }

    /// Embeds as a polynomial in variable `var` of an `nvars`-variable ring.
    pub fn to_multi(&self, nvars: usize, var: usize, order: TermOrder) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            order,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                (Monomial::one(nvars).with_exp(var, i as u32), c.clone())
            }),
        )
    }

    /// Reads a polynomial that involves only `var`.
    pub fn from_multi(p: &MultiPoly, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rational::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            if m.degree() != m.exp(var) {
                return None;
            }
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }
}

/// Positive divisors of `n > 0` by trial division, or `None` when `n` has a
/// cofactor beyond the trial bound that is not certified prime.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    const TRIAL_BOUND: u64 = 1_000_000;
    if n.is_zero() {
        return None;
    }
    let mut rest = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            primes.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let bound = BigInt::from(TRIAL_BOUND);
        if rest > &bound * &bound {
            return None;
        }
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_multi(1, 0, TermOrder::GrevLex);
        f.write_str(&p.render(&["t".to_string()]))
    }
}
