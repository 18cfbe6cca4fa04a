//! Buchberger's algorithm over the rationals, normal forms, staircase
//! dimension and rational-point enumeration.
//!
//! This engine is the algebraic oracle for the rest of the crate: prolonged
//! ideal dimensions, invariance checks and polynomial systems from ansatz
//! searches all end up here.

mod points;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::algebra::{AlgebraError, Monomial, MultiPoly, TermOrder};

pub use points::{rational_points, PointSet};

/// A Gröbner basis of a polynomial ideal.
#[derive(Clone, PartialEq, Debug)]
pub struct GroebnerBasis {
    gens: Vec<MultiPoly>,
    order: TermOrder,
    nvars: usize,
    reduced: bool,
}

impl GroebnerBasis {
    /// The basis `{}` of the zero ideal in `nvars` variables.
    pub fn zero_ideal(nvars: usize, order: TermOrder) -> Self {
        GroebnerBasis {
            gens: vec![],
            order,
            nvars,
            reduced: true,
        }
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<MultiPoly> {
        self.gens
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// The basis of the unit ideal is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    /// The basis of the zero ideal is empty.
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        normal_form(p, self).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by the normal strategy (least lcm first, ties by
/// index) and discarded by Buchberger's coprimality and chain criteria.
/// The result is monic, interreduced and sorted by increasing leading
/// monomial, so it does not depend on the order of `gens`.
pub fn buchberger(gens: &[MultiPoly], order: TermOrder) -> Result<GroebnerBasis, AlgebraError> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => {
            return Ok(GroebnerBasis {
                gens: vec![],
                order,
                nvars: 0,
                reduced: true,
            })
        }
    };
    if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(AlgebraError::SignatureMismatch {
            left: nvars,
            right: bad.nvars(),
        });
    }
    let mut basis: Vec<MultiPoly> = Vec::new();
    // interreduce the input first; this keeps the pair set small
    let mut input: Vec<MultiPoly> = gens
        .iter()
        .map(|g| g.with_order(order))
        .filter(|g| !g.is_zero())
        .collect();
    input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut pairs: Vec<Pair> = Vec::new();
    let mut treated: BTreeSet<(usize, usize)> = BTreeSet::new();

    for g in input {
        let h = g.reduce_by(&basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(nvars, order));
        }
        add_generator(h, &mut basis, &mut pairs);
    }

    while !pairs.is_empty() {
        let pos = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(p, _)| p)
            .unwrap();
        let pair = pairs.swap_remove(pos);
        treated.insert((pair.i, pair.j));
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let (li, lj) = (fi.leading_monomial().unwrap(), fj.leading_monomial().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        if chain_criterion(&pair, &basis, &pairs, &treated) {
            continue;
        }
        let s = s_polynomial(fi, fj);
        let h = s.reduce_by(&basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(nvars, order));
        }
        add_generator(h, &mut basis, &mut pairs);
    }

    Ok(GroebnerBasis {
        gens: reduce_basis(basis, order),
        order,
        nvars,
        reduced: true,
    })
}

fn add_generator(h: MultiPoly, basis: &mut Vec<MultiPoly>, pairs: &mut Vec<Pair>) {
    let h = h.monic();
    let k = basis.len();
    let lm = h.leading_monomial().unwrap().clone();
    for (i, g) in basis.iter().enumerate() {
        pairs.push(Pair {
            i,
            j: k,
            lcm: g.leading_monomial().unwrap().lcm(&lm),
        });
    }
    basis.push(h);
}

fn unit_basis(nvars: usize, order: TermOrder) -> GroebnerBasis {
    GroebnerBasis {
        gens: vec![MultiPoly::one(nvars, order)],
        order,
        nvars,
        reduced: true,
    }
}

/// Skip `(i, j)` when some `k` has `LM(k) | lcm(i, j)` and both `(i, k)` and
/// `(j, k)` have already been treated.
fn chain_criterion(
    pair: &Pair,
    basis: &[MultiPoly],
    pending: &[Pair],
    treated: &BTreeSet<(usize, usize)>,
) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let is_pending = |a: usize, b: usize| {
        let (a, b) = key(a, b);
        pending.iter().any(|p| p.i == a && p.j == b)
    };
    basis.iter().enumerate().any(|(k, g)| {
        k != pair.i
            && k != pair.j
            && g.leading_monomial().unwrap().divides(&pair.lcm)
            && treated.contains(&key(pair.i, k))
            && treated.contains(&key(pair.j, k))
            && !is_pending(pair.i, k)
            && !is_pending(pair.j, k)
    })
}

pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (lf, cf) = f.leading_term().unwrap();
    let (lg, cg) = g.leading_term().unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l), &cf.recip());
    let b = g.mul_term(&lg.quotient_of(&l), &cg.recip());
    &a - &b
}

/// Minimalizes and interreduces a Gröbner basis.
fn reduce_basis(basis: Vec<MultiPoly>, order: TermOrder) -> Vec<MultiPoly> {
    let mut gs: Vec<MultiPoly> = basis.into_iter().filter(|g| !g.is_zero()).collect();
    gs.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for g in gs {
        let lm = g.leading_monomial().unwrap();
        if minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            continue;
        }
        minimal.push(g);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[i];
        let (lm, lc) = g.leading_term().unwrap();
        let tail = MultiPoly::from_terms(g.nvars(), order, g.terms()[1..].iter().cloned());
        let tail = tail.reduce_by(&others);
        let head = MultiPoly::monomial(order, lm.clone(), lc.clone());
        out.push((&head + &tail).monic());
    }
    out.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}

/// Remainder of `p` on division by `g`; zero exactly when `p` lies in the ideal.
pub fn normal_form(p: &MultiPoly, g: &GroebnerBasis) -> MultiPoly {
    if p.is_zero() || g.gens.is_empty() {
        return p.with_order(g.order);
    }
    p.with_order(g.order).reduce_by(&g.gens)
}

/// Staircase (Krull) dimension: the largest number of variables no leading
/// monomial is supported on. `-1` for the unit ideal.
pub fn ideal_dimension(g: &GroebnerBasis) -> i64 {
    if g.is_unit() {
        return -1;
    }
    let n = g.nvars;
    assert!(n <= 128, "dimension search supports at most 128 variables");
    let supports: Vec<u128> = g
        .gens
        .iter()
        .map(|p| p.leading_monomial().unwrap().support_mask())
        .collect();
    // dim = n - (minimum hitting set of the supports)
    let mut best = n;
    min_hitting_set(&supports, 0u128, 0, &mut best);
    (n - best) as i64
}

fn min_hitting_set(supports: &[u128], chosen: u128, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let unhit = supports.iter().filter(|s| *s & chosen == 0).min_by_key(|s| s.count_ones());
    match unhit {
        None => *best = size,
        Some(s) => {
            let mut bits = *s;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                min_hitting_set(supports, chosen | b, size + 1, best);
                bits &= bits - 1;
            }
        }
    }
}

/// Generators of the elimination ideal `I ∩ Q[x_k, ..., x_{n-1}]` read off a
/// basis computed with [`TermOrder::Elim`]`(k)`, with the first `k` variables
/// removed from the signature.
pub fn elimination_ideal(g: &GroebnerBasis, k: usize) -> Vec<MultiPoly> {
    g.gens
        .iter()
        .filter(|p| (0..k).all(|v| !p.involves(v)))
        .map(|p| {
            let mut q = p.clone();
            for _ in 0..k {
                q = q.drop_unused_var(0);
            }
            q
        })
        .collect()
}

/// Saturation `I : h^∞` via a Rabinowitsch variable, returned as a reduced
/// basis in `order` over the original variables.
pub fn saturate(gens: &[MultiPoly], h: &MultiPoly, order: TermOrder) -> Result<GroebnerBasis, AlgebraError> {
    let n = h.nvars();
    let mut ext: Vec<MultiPoly> = gens
        .iter()
        .map(|g| g.with_order(TermOrder::Elim(1)).insert_vars(0, 1))
        .collect();
    let z = MultiPoly::var(n + 1, TermOrder::Elim(1), 0);
    let hz = &(&z * &h.with_order(TermOrder::Elim(1)).insert_vars(0, 1)) - &MultiPoly::one(n + 1, TermOrder::Elim(1));
    ext.push(hz);
    let gb = buchberger(&ext, TermOrder::Elim(1))?;
    let elim: Vec<MultiPoly> = elimination_ideal(&gb, 1)
        .into_iter()
        .map(|p| p.with_order(order))
        .collect();
    if elim.is_empty() {
        return Ok(GroebnerBasis::zero_ideal(n, order));
    }
    buchberger(&elim, order)
}

/// Ordering helper for sorting polynomials by leading monomial.
pub fn cmp_leading(order: TermOrder, a: &MultiPoly, b: &MultiPoly) -> Ordering {
    match (a.leading_monomial(), b.leading_monomial()) {
        (Some(x), Some(y)) => order.cmp(x, y),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
    }
}
