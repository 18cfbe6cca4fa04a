//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, TermOrder};
use super::{AlgebraError, Rational};

/// A polynomial in `nvars` variables with rational coefficients.
///
/// Terms are kept sorted in strictly decreasing order under `order` and no
/// stored coefficient is zero, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    order: TermOrder,
    terms: Vec<(Monomial, Rational)>,
}

/// Selector for [`poly_arith`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

/// Checked binary arithmetic: signature mismatches and inexact divisions are errors.
pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly, AlgebraError> {
    if a.nvars != b.nvars {
        return Err(AlgebraError::SignatureMismatch {
            left: a.nvars,
            right: b.nvars,
        });
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::ExactDiv => a.exact_div(b)?,
    })
}

impl MultiPoly {
    pub fn zero(nvars: usize, order: TermOrder) -> Self {
        MultiPoly {
            nvars,
            order,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize, order: TermOrder) -> Self {
        Self::constant(nvars, order, Rational::one())
    }

    pub fn constant(nvars: usize, order: TermOrder, c: Rational) -> Self {
        let mut p = Self::zero(nvars, order);
        if !c.is_zero() {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn var(nvars: usize, order: TermOrder, var: usize) -> Self {
        assert!(var < nvars, "variable {var} out of range for {nvars} variables");
        MultiPoly {
            nvars,
            order,
            terms: vec![(Monomial::var(nvars, var), Rational::one())],
        }
    }

    pub fn monomial(order: TermOrder, m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(nvars, order);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(nvars: usize, order: TermOrder, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length does not match signature");
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, order, acc)
    }

    fn from_map(nvars: usize, order: TermOrder, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly {
            nvars,
            order,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    /// Variables occurring with positive exponent, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|v| self.terms.iter().any(|(m, _)| m.exp(*v) > 0))
            .collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Re-sorts the terms under another order.
    pub fn with_order(&self, order: TermOrder) -> MultiPoly {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly {
            nvars: self.nvars,
            order,
            terms,
        }
    }

    fn aligned<'a>(&self, other: &'a MultiPoly) -> std::borrow::Cow<'a, MultiPoly> {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomial signature mismatch ({} vs {} variables)",
            self.nvars, other.nvars
        );
        if self.order == other.order {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.with_order(self.order))
        }
    }

    fn merge(&self, other: &MultiPoly, negate_other: bool) -> MultiPoly {
        let other = self.aligned(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            let c = if negate_other { -c } else { c.clone() };
            out.push((m.clone(), c));
        }
        MultiPoly {
            nvars: self.nvars,
            order: self.order,
            terms: out,
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars, self.order);
        }
        MultiPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars, self.order);
        }
        MultiPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.nvars, self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / divisor`; a nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let divisor = self.aligned(divisor);
        let (lm, lc) = divisor.leading_term().expect("nonzero divisor");
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quotient_terms = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(AlgebraError::InexactDivision);
            }
            let q = lm.quotient_of(m);
            let qc = c * &lc_inv;
            rem = &rem - &divisor.mul_term(&q, &qc);
            quotient_terms.push((q, qc));
        }
        Ok(MultiPoly::from_terms(self.nvars, self.order, quotient_terms))
    }

    /// Multivariate division by a list: returns the remainder, in which no
    /// term is divisible by any leading monomial of `divisors`.
    pub fn reduce_by(&self, divisors: &[MultiPoly]) -> MultiPoly {
        let divisors: Vec<&MultiPoly> = divisors.iter().filter(|d| !d.is_zero()).collect();
        let mut p = self.clone();
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = p.terms.first().cloned() {
            let hit = divisors
                .iter()
                .find(|d| d.leading_monomial().unwrap().divides(&m));
            match hit {
                Some(d) => {
                    let d = self.aligned(d);
                    let (lm, lc) = d.leading_term().unwrap();
                    let q = lm.quotient_of(&m);
                    let qc = &c / lc;
                    p = &p - &d.mul_term(&q, &qc);
                }
                None => {
                    rem.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            order: self.order,
            terms: rem,
        }
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            if e == 0 {
                None
            } else {
                Some((m.with_exp(var, e - 1), c * Rational::from_integer(e.into())))
            }
        });
        MultiPoly::from_terms(self.nvars, self.order, terms)
    }

    /// Coefficients of `self` viewed as a polynomial in `var`: entry `k`
    /// is the coefficient of `var^k` (same signature, free of `var`).
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            buckets[e].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| MultiPoly::from_terms(self.nvars, self.order, t))
            .collect()
    }

    /// Leading coefficient with respect to `var` (free of `var`).
    pub fn lead_coeff_in(&self, var: usize) -> MultiPoly {
        let d = self.degree_in(var);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) == d)
            .map(|(m, c)| (m.with_exp(var, 0), c.clone()));
        MultiPoly::from_terms(self.nvars, self.order, terms)
    }

    /// Substitutes the rational `value` for `var` and removes it from the signature.
    pub fn eval_var(&self, var: usize, value: &Rational) -> MultiPoly {
        let mut powers: Vec<Rational> = vec![Rational::one()];
        let terms: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exp(var) as usize;
                while powers.len() <= e {
                    let next = powers.last().unwrap() * value;
                    powers.push(next);
                }
                (m.drop_var(var), c * &powers[e])
            })
            .collect();
        MultiPoly::from_terms(self.nvars - 1, self.order, terms)
    }

    /// Substitutes `value` for `var`, keeping the signature.
    pub fn subst_var(&self, var: usize, value: &MultiPoly) -> MultiPoly {
        let value = self.aligned(value).into_owned();
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one(self.nvars, self.order)];
        let mut acc = MultiPoly::zero(self.nvars, self.order);
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * &value;
                powers.push(next);
            }
            acc = &acc + &powers[e].mul_term(&m.with_exp(var, 0), c);
        }
        acc
    }

    /// Evaluates at a full rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.exps().iter().enumerate() {
                for _ in 0..*e {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Inserts `count` fresh variables at position `at` (existing indices
    /// `>= at` shift up).
    pub fn insert_vars(&self, at: usize, count: usize) -> MultiPoly {
        let nvars = self.nvars + count;
        let terms = self.terms.iter().map(|(m, c)| (m.insert_vars(at, count), c.clone()));
        MultiPoly::from_terms(nvars, self.order, terms)
    }

    /// Moves to a signature of `nvars` variables, sending old variable `i`
    /// to `map[i]`.
    pub fn remap(&self, nvars: usize, order: TermOrder, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u32; nvars];
            for (i, e) in m.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial::new(exps), c.clone())
        });
        MultiPoly::from_terms(nvars, order, terms)
    }

    /// Drops a variable that does not occur.
    pub fn drop_unused_var(&self, var: usize) -> MultiPoly {
        assert!(!self.involves(var), "variable {var} still occurs");
        let terms = self.terms.iter().map(|(m, c)| (m.drop_var(var), c.clone()));
        MultiPoly::from_terms(self.nvars - 1, self.order, terms)
    }

    /// Renders with caller-supplied variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format!("{}*{}", abs, m.render(names)));
            }
        }
        out
    }

    /// Default variable names `x1, x2, ...`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&MultiPoly::default_names(self.nvars)))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, true)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let rhs = self.aligned(rhs);
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(self.nvars, self.order);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        MultiPoly::from_map(self.nvars, self.order, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn xy() -> (MultiPoly, MultiPoly) {
        (
            MultiPoly::var(2, TermOrder::GrevLex, 0),
            MultiPoly::var(2, TermOrder::GrevLex, 1),
        )
    }

    #[test]
    fn binomial_square() {
        let (x, y) = xy();
        let s = &x + &y;
        let sq = &s * &s;
        let expected = &(&(&x * &x) + &(&x * &y).scale(&rat(2, 1))) + &(&y * &y);
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn multiplication_by_zero_absorbs() {
        let (x, y) = xy();
        let z = MultiPoly::zero(2, TermOrder::GrevLex);
        assert!((&(&x + &y) * &z).is_zero());
    }

    #[test]
    fn exact_division_and_its_failure() {
        let (x, y) = xy();
        let a = &(&x * &x) - &(&y * &y);
        let q = poly_arith(&a, &(&x - &y), PolyOp::ExactDiv).unwrap();
        assert_eq!(q, &x + &y);
        assert_eq!(&q * &(&x - &y), a);
        assert_eq!(
            poly_arith(&a, &(&x + &MultiPoly::one(2, TermOrder::GrevLex)), PolyOp::ExactDiv),
            Err(AlgebraError::InexactDivision)
        );
    }

    #[test]
    fn signature_mismatch_is_reported() {
        let a = MultiPoly::var(2, TermOrder::GrevLex, 0);
        let b = MultiPoly::var(3, TermOrder::GrevLex, 0);
        assert_eq!(
            poly_arith(&a, &b, PolyOp::Add),
            Err(AlgebraError::SignatureMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn substitution_and_evaluation() {
        let (x, y) = xy();
        let p = &(&x * &y) + &x;
        let e = p.eval_var(1, &rat(3, 1));
        assert_eq!(e.nvars(), 1);
        assert_eq!(e, MultiPoly::var(1, TermOrder::GrevLex, 0).scale(&rat(4, 1)));
        assert_eq!(p.eval(&[rat(2, 1), rat(1, 2)]), rat(3, 1));
    }
}
