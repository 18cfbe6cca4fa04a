//! Differential polynomials: sparse polynomials in the indeterminates `θu_j`
//! with rational-function coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::indet::{AlgIndet, DerivativeIndex};
use super::{DiffError, DiffRing};
use crate::algebra::{MultiPoly, RatFunc, Rational, TermOrder};

/// A power product of indeterminates, highest rank first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct DiffMonomial(Vec<(AlgIndet, u32)>);

impl DiffMonomial {
    pub fn one() -> Self {
        DiffMonomial(Vec::new())
    }

    pub fn indet(v: AlgIndet, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        DiffMonomial(vec![(v, e)])
    }

    pub fn factors(&self) -> &[(AlgIndet, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exp(&self, v: &AlgIndet) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &DiffMonomial) -> DiffMonomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        DiffMonomial(out)
    }

    /// Sets the exponent of `v`.
    pub fn with_exp(&self, v: &AlgIndet, e: u32) -> DiffMonomial {
        let mut out: Vec<(AlgIndet, u32)> = self.0.iter().filter(|(w, _)| w != v).cloned().collect();
        if e > 0 {
            out.push((v.clone(), e));
            out.sort_by(|a, b| b.0.cmp(&a.0));
        }
        DiffMonomial(out)
    }

    /// Highest-rank indeterminate present.
    pub fn top(&self) -> Option<&AlgIndet> {
        self.0.first().map(|(v, _)| v)
    }

    fn render(&self) -> String {
        self.0
            .iter()
            .map(|(v, e)| {
                let base = v.to_string();
                match (*e, v.theta.is_identity()) {
                    (1, _) => base,
                    (e, true) => format!("{base}^{e}"),
                    (e, false) => format!("({base})^{e}"),
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// An element of the differential polynomial ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffPoly {
    ring: Arc<DiffRing>,
    terms: BTreeMap<DiffMonomial, RatFunc>,
}

impl DiffPoly {
    pub fn zero(ring: &Arc<DiffRing>) -> Self {
        DiffPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<DiffRing>) -> Self {
        Self::coeff(ring, RatFunc::one(ring.field().params()))
    }

    pub fn constant(ring: &Arc<DiffRing>, c: Rational) -> Self {
        Self::coeff(ring, RatFunc::constant(ring.field().params(), c))
    }

    /// An element of the coefficient field.
    pub fn coeff(ring: &Arc<DiffRing>, c: RatFunc) -> Self {
        Self::term(ring, DiffMonomial::one(), c)
    }

    pub fn term(ring: &Arc<DiffRing>, m: DiffMonomial, c: RatFunc) -> Self {
        assert_eq!(c.nvars(), ring.field().params(), "coefficient outside the field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn indet(ring: &Arc<DiffRing>, v: AlgIndet) -> Self {
        assert!(ring.contains(&v), "indeterminate {v} outside the ring");
        Self::term(ring, DiffMonomial::indet(v, 1), RatFunc::one(ring.field().params()))
    }

    /// `u_j` for 1-based `j`.
    pub fn u(ring: &Arc<DiffRing>, j: usize) -> Self {
        Self::indet(ring, AlgIndet::base(ring.m(), j))
    }

    pub fn ring(&self) -> &Arc<DiffRing> {
        &self.ring
    }

    /// Terms from the highest monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DiffMonomial, &RatFunc)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lies in the coefficient field.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<RatFunc> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .get(&DiffMonomial::one())
                .cloned()
                .unwrap_or_else(|| RatFunc::zero(self.ring.field().params())),
        )
    }

    fn check_ring(&self, other: &DiffPoly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "differential polynomials from different rings"
        );
    }

    pub fn scale(&self, c: &RatFunc) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero(&self.ring);
        }
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero(&self.ring);
        }
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.scale(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &DiffMonomial) -> DiffPoly {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut acc = DiffPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Every indeterminate occurring, in increasing rank.
    pub fn indets(&self) -> BTreeSet<AlgIndet> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn involves(&self, v: &AlgIndet) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn degree_in(&self, v: &AlgIndet) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Highest-rank indeterminate; an error for elements of the coefficient field.
    pub fn leader(&self) -> Result<AlgIndet, DiffError> {
        // the largest monomial starts with the largest indeterminate
        self.terms
            .keys()
            .next_back()
            .and_then(|m| m.top().cloned())
            .ok_or(DiffError::ConstantInput)
    }

    /// Maximum order of an occurring indeterminate (0 for constants).
    pub fn order(&self) -> u32 {
        self.indets().iter().map(|v| v.order()).max().unwrap_or(0)
    }

    pub fn leading_degree(&self) -> Result<u32, DiffError> {
        let v = self.leader()?;
        Ok(self.degree_in(&v))
    }

    /// `(u_f, d_f)`; `None` for constants, which rank below everything.
    pub fn rank(&self) -> Option<(AlgIndet, u32)> {
        let v = self.leader().ok()?;
        let d = self.degree_in(&v);
        Some((v, d))
    }

    /// Formal partial derivative with respect to one indeterminate.
    pub fn partial(&self, v: &AlgIndet) -> DiffPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            terms.insert(
                m.with_exp(v, e - 1),
                c.scale(&Rational::from_integer(e.into())),
            );
        }
        DiffPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `∂f/∂u_f`.
    pub fn separant(&self) -> Result<DiffPoly, DiffError> {
        Ok(self.partial(&self.leader()?))
    }

    /// Coefficient of `u_f^{d_f}`.
    pub fn initial(&self) -> Result<DiffPoly, DiffError> {
        let v = self.leader()?;
        let d = self.degree_in(&v);
        Ok(self.coeff_of_power(&v, d))
    }

    /// Coefficient of `v^e` when viewed as a polynomial in `v`.
    pub fn coeff_of_power(&self, v: &AlgIndet, e: u32) -> DiffPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == e)
            .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
            .collect();
        DiffPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Total derivative `δ_k f`: the declared action on coefficients plus
    /// `θu_j ↦ δ_kθu_j`, extended by the Leibniz rule.
    pub fn apply_derivation(&self, k: usize) -> Result<DiffPoly, DiffError> {
        let m = self.ring.m();
        if k == 0 || k > m {
            return Err(DiffError::InvalidDerivation { k, m });
        }
        let mut acc: BTreeMap<DiffMonomial, RatFunc> = BTreeMap::new();
        let mut add = |mono: DiffMonomial, c: RatFunc| {
            if c.is_zero() {
                return;
            }
            match acc.get_mut(&mono) {
                Some(old) => {
                    let s = &*old + &c;
                    if s.is_zero() {
                        acc.remove(&mono);
                    } else {
                        *old = s;
                    }
                }
                None => {
                    acc.insert(mono, c);
                }
            }
        };
        for (mono, c) in &self.terms {
            let dc = self.ring.field().derive(c, k);
            add(mono.clone(), dc);
            for (v, e) in &mono.0 {
                let reduced = mono.with_exp(v, e - 1);
                let nm = reduced.mul(&DiffMonomial::indet(v.derive(k), 1));
                add(nm, c.scale(&Rational::from_integer((*e).into())));
            }
        }
        Ok(DiffPoly {
            ring: self.ring.clone(),
            terms: acc,
        })
    }

    /// `θ f` for a derivative operator `θ`.
    pub fn apply_theta(&self, theta: &DerivativeIndex) -> Result<DiffPoly, DiffError> {
        let mut f = self.clone();
        for k in 1..=theta.m() {
            for _ in 0..theta.exp(k) {
                f = f.apply_derivation(k)?;
            }
        }
        Ok(f)
    }

    /// Converts to an ordinary polynomial over the listed indeterminates
    /// (variable `i` is `frame[i]`). `None` when a coefficient is not a
    /// rational constant or an indeterminate is missing from `frame`.
    pub fn to_multi(&self, frame: &[AlgIndet], order: TermOrder) -> Option<MultiPoly> {
        let index: BTreeMap<&AlgIndet, usize> = frame.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c = c.as_constant()?;
            let mut exps = vec![0u32; frame.len()];
            for (v, e) in &m.0 {
                exps[*index.get(v)?] = *e;
            }
            terms.push((crate::algebra::Monomial::new(exps), c));
        }
        Some(MultiPoly::from_terms(frame.len(), order, terms))
    }

    /// Inverse of [`to_multi`](Self::to_multi).
    pub fn from_multi(ring: &Arc<DiffRing>, p: &MultiPoly, frame: &[AlgIndet]) -> DiffPoly {
        assert_eq!(p.nvars(), frame.len());
        let s = ring.field().params();
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut factors: Vec<(AlgIndet, u32)> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| (frame[i].clone(), *e))
                .collect();
            factors.sort_by(|a, b| b.0.cmp(&a.0));
            terms.insert(DiffMonomial(factors), RatFunc::constant(s, c.clone()));
        }
        DiffPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Canonical text form, for example `(d1*u1)^2 - u1`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = self.ring.field().param_names();
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.num().leading_coeff().is_some_and(|x| x.is_negative());
            let c = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coeff = render_coeff(&c, &names);
            match (m.is_one(), coeff.as_deref()) {
                (true, None) => out.push('1'),
                (true, Some(s)) => out.push_str(s),
                (false, None) => out.push_str(&m.render()),
                (false, Some(s)) => {
                    out.push_str(s);
                    out.push('*');
                    out.push_str(&m.render());
                }
            }
        }
        out
    }
}

/// Text of a positive-leading coefficient; `None` for 1.
fn render_coeff(c: &RatFunc, names: &[String]) -> Option<String> {
    if c.is_one() {
        return None;
    }
    if let Some(q) = c.as_constant() {
        return Some(q.to_string());
    }
    let wrap = |p: &MultiPoly| {
        let s = p.render(names);
        if p.len() > 1 || s.starts_with('-') {
            format!("({s})")
        } else {
            s
        }
    };
    let num = if c.num().len() == 1 && c.num().leading_coeff().is_some_and(|x| x.is_one()) {
        c.num().render(names)
    } else {
        wrap(c.num())
    };
    if c.den().is_one() {
        Some(num)
    } else {
        Some(format!("{}/{}", num, wrap(c.den())))
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn merge(a: &DiffPoly, b: &DiffPoly, negate: bool) -> DiffPoly {
    a.check_ring(b);
    let mut terms = a.terms.clone();
    for (m, c) in &b.terms {
        let c = if negate { -c } else { c.clone() };
        match terms.get_mut(m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    terms.remove(m);
                } else {
                    *old = s;
                }
            }
            None => {
                terms.insert(m.clone(), c);
            }
        }
    }
    DiffPoly {
        ring: a.ring.clone(),
        terms,
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        merge(self, rhs, true)
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        self.check_ring(rhs);
        let mut terms: BTreeMap<DiffMonomial, RatFunc> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(old) => {
                        let s = &*old + &c;
                        if s.is_zero() {
                            terms.remove(&m);
                        } else {
                            *old = s;
                        }
                    }
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        DiffPoly {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: DiffPoly) -> DiffPoly {
        &self + &rhs
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: DiffPoly) -> DiffPoly {
        &self - &rhs
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl DiffPoly {
    /// `true` when the polynomial equals the rational constant `c`.
    pub fn is_rational_constant(&self, c: &Rational) -> bool {
        match self.constant_value() {
            Some(v) => v.as_constant().is_some_and(|x| &x == c),
            None => false,
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_rational_constant(&Rational::one())
    }
}
