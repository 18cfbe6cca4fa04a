//! Ritt-Kolchin partial and full reduction with certificates.

use std::collections::BTreeMap;

use super::autoreduced::AutoreducedSet;
use super::indet::{AlgIndet, DerivativeIndex};
use super::poly::{DiffMonomial, DiffPoly};
use super::DiffError;

/// One summand `q · θ f_i` of a reduction certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertificateTerm {
    /// Index into the autoreduced set (increasing rank).
    pub element: usize,
    pub theta: DerivativeIndex,
    pub quotient: DiffPoly,
}

/// The identity `(∏ S_i^{a_i} I_i^{b_i}) · g = Σ q · θ f_i + R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    /// `a_i`, one per element of the set.
    pub separant_exps: Vec<u32>,
    /// `b_i`, one per element of the set.
    pub initial_exps: Vec<u32>,
    pub terms: Vec<CertificateTerm>,
    pub remainder: DiffPoly,
}

impl Certificate {
    /// No reduction step was needed.
    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty()
    }

    /// `∏ S_i^{a_i} I_i^{b_i}`.
    pub fn multiplier(&self, set: &AutoreducedSet) -> Result<DiffPoly, DiffError> {
        let mut acc = DiffPoly::one(set.ring());
        for (i, f) in set.elements().iter().enumerate() {
            if self.separant_exps[i] > 0 {
                acc = &acc * &f.separant()?.pow(self.separant_exps[i]);
            }
            if self.initial_exps[i] > 0 {
                acc = &acc * &f.initial()?.pow(self.initial_exps[i]);
            }
        }
        Ok(acc)
    }

    /// Re-expands both sides of the identity and compares them exactly.
    pub fn verify(&self, g: &DiffPoly, set: &AutoreducedSet) -> Result<bool, DiffError> {
        if self.separant_exps.len() != set.len() || self.initial_exps.len() != set.len() {
            return Ok(false);
        }
        let lhs = &self.multiplier(set)? * g;
        let mut rhs = self.remainder.clone();
        for t in &self.terms {
            let Some(f) = set.elements().get(t.element) else {
                return Ok(false);
            };
            rhs = &rhs + &(&t.quotient * &f.apply_theta(&t.theta)?);
        }
        Ok(lhs == rhs)
    }
}

/// `true` when no proper derivative of any leader occurs in `r` and every
/// leader occurs with degree below its leading degree.
pub fn is_reduced_wrt(r: &DiffPoly, set: &AutoreducedSet) -> bool {
    let indets = r.indets();
    set.elements().iter().all(|f| {
        let (u, d) = f.rank().expect("nonconstant");
        !indets.iter().any(|v| v.is_proper_derivative_of(&u)) && r.degree_in(&u) < d
    })
}

struct Tracker {
    quotients: BTreeMap<(usize, DerivativeIndex), DiffPoly>,
    separant_exps: Vec<u32>,
    initial_exps: Vec<u32>,
}

impl Tracker {
    /// Records `r ← c·r − q·h` where `h = θ f_i`.
    fn step(&mut self, c: &DiffPoly, q: DiffPoly, element: usize, theta: &DerivativeIndex) {
        if !c.is_one() {
            for v in self.quotients.values_mut() {
                *v = &*v * c;
            }
        }
        let key = (element, theta.clone());
        match self.quotients.get_mut(&key) {
            Some(old) => *old = &*old + &q,
            None => {
                self.quotients.insert(key, q);
            }
        }
    }
}

/// One pseudo-division step target: `r ← lc(h)·r − lc(r)·v^{deg r − deg h}·h`.
fn pseudo_step(r: &DiffPoly, h: &DiffPoly, v: &AlgIndet, lc_h: &DiffPoly, dh: u32) -> (DiffPoly, DiffPoly) {
    let dr = r.degree_in(v);
    let lc_r = r.coeff_of_power(v, dr);
    let q = lc_r.mul_monomial(&DiffMonomial::indet(v.clone(), dr - dh));
    let next = &(lc_h * r) - &(&q * h);
    (next, q)
}

/// Ritt-Kolchin reduction of `g` by an autoreduced set.
///
/// Proper derivatives of leaders are eliminated first, highest indeterminate
/// first, by pseudo-division against `θ f`, which is linear in `θ u_f` with
/// coefficient `S_f`; when several elements apply the lowest-ranked one is
/// used. The result is then pseudo-divided by the elements themselves,
/// highest leader first, multiplying by initials. The remainder is reduced
/// with respect to the set.
pub fn ritt_reduce(g: &DiffPoly, set: &AutoreducedSet) -> Result<(DiffPoly, Certificate), DiffError> {
    if g.ring() != set.ring() {
        return Err(DiffError::SignatureMismatch("polynomial and set live in different rings".into()));
    }
    let ranks: Vec<(AlgIndet, u32)> = set
        .elements()
        .iter()
        .map(|f| f.rank().expect("nonconstant"))
        .collect();
    let separants: Vec<DiffPoly> = set
        .elements()
        .iter()
        .map(|f| f.separant())
        .collect::<Result<_, _>>()?;
    let initials: Vec<DiffPoly> = set
        .elements()
        .iter()
        .map(|f| f.initial())
        .collect::<Result<_, _>>()?;
    let mut tracker = Tracker {
        quotients: BTreeMap::new(),
        separant_exps: vec![0; set.len()],
        initial_exps: vec![0; set.len()],
    };
    let mut derived: BTreeMap<(usize, DerivativeIndex), DiffPoly> = BTreeMap::new();
    let mut r = g.clone();

    // eliminate proper derivatives of leaders
    loop {
        let target = r.indets().into_iter().rev().find_map(|v| {
            ranks
                .iter()
                .position(|(u, _)| v.is_proper_derivative_of(u))
                .map(|i| (v, i))
        });
        let Some((v, i)) = target else { break };
        let theta = ranks[i].0.theta.quotient_of(&v.theta);
        let key = (i, theta.clone());
        if !derived.contains_key(&key) {
            derived.insert(key.clone(), set.elements()[i].apply_theta(&theta)?);
        }
        let h = &derived[&key];
        debug_assert_eq!(h.degree_in(&v), 1);
        debug_assert_eq!(h.coeff_of_power(&v, 1), separants[i]);
        while r.degree_in(&v) >= 1 {
            let (next, q) = pseudo_step(&r, h, &v, &separants[i], 1);
            tracker.step(&separants[i], q, i, &theta);
            tracker.separant_exps[i] += 1;
            r = next;
        }
    }

    // pseudo-divide by the elements, highest leader first
    let identity = DerivativeIndex::identity(set.ring().m());
    for i in (0..set.len()).rev() {
        let (u, d) = &ranks[i];
        let f = &set.elements()[i];
        while r.degree_in(u) >= *d {
            let (next, q) = pseudo_step(&r, f, u, &initials[i], *d);
            tracker.step(&initials[i], q, i, &identity);
            tracker.initial_exps[i] += 1;
            r = next;
        }
    }

    let terms = tracker
        .quotients
        .into_iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|((element, theta), quotient)| CertificateTerm {
            element,
            theta,
            quotient,
        })
        .collect();
    let cert = Certificate {
        separant_exps: tracker.separant_exps,
        initial_exps: tracker.initial_exps,
        terms,
        remainder: r.clone(),
    };
    Ok((r, cert))
}
