//! Prolongation frames `∇_t`, prolonged ideals, the affine fiber of the
//! order-`t` coordinates over level `t − 1`, and D-variety data at the
//! prolongation bound.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, MultiPoly, RatFunc, TermOrder};
use crate::diff_ring::{indets_up_to, AlgIndet, AutoreducedSet, DerivativeIndex, DiffError, DiffPoly, DiffRing};
use crate::groebner::{buchberger, ideal_dimension, normal_form, saturate, GroebnerBasis};
use crate::initial_sets::{prolongation_bound, ExpPoint, InitialSetRep, ProlongationBound};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProlongError {
    #[error("level {t} is below the maximal order {order} of the set")]
    BelowOrder { t: u32, order: u32 },
    #[error("level {t} must exceed the maximal order {order} of the set")]
    NotAboveOrder { t: u32, order: u32 },
    #[error("prolongation needs rational constant coefficients")]
    NonConstantCoefficients,
    #[error("{0} is not linear in the order-{1} coordinates")]
    NotLinear(String, u32),
    #[error("separant vanishes identically")]
    ZeroSeparant,
    #[error("fiber dimension {fiber} disagrees with the initial-set count {counted}")]
    FiberRankMismatch { counted: u64, fiber: u64 },
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The coordinates of `∇_t`: every `θu_j` of order at most `t`, in
/// increasing rank. Variable `i` of polynomials over the frame is `indets[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NablaFrame {
    pub m: usize,
    pub n: usize,
    pub t: u32,
    pub indets: Vec<AlgIndet>,
}

impl NablaFrame {
    pub fn new(m: usize, n: usize, t: u32) -> Self {
        NablaFrame {
            m,
            n,
            t,
            indets: indets_up_to(m, n, t),
        }
    }

    pub fn len(&self) -> usize {
        self.indets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indets.is_empty()
    }

    pub fn index_of(&self, v: &AlgIndet) -> Option<usize> {
        self.indets.binary_search(v).ok()
    }

    /// Printable names, e.g. `d1*u1`.
    pub fn names(&self) -> Vec<String> {
        self.indets.iter().map(|v| v.to_string()).collect()
    }

    /// Indices of the coordinates of order exactly `t`; they form a suffix.
    pub fn top_range(&self) -> std::ops::Range<usize> {
        let start = self.indets.iter().position(|v| v.order() == self.t).unwrap_or(self.len());
        start..self.len()
    }
}

/// The polynomials `θf` (`f ∈ Λ`, `ord θf ≤ t`) over the frame `∇_t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProlongedIdeal {
    pub t: u32,
    pub frame: NablaFrame,
    pub generators: Vec<MultiPoly>,
    /// `(element index, θ)` for each generator.
    pub provenance: Vec<(usize, DerivativeIndex)>,
    /// Separants and initials of the elements of order at most `t`; the
    /// ideal of the prolongation is the saturation by their product.
    pub saturating: Vec<MultiPoly>,
}

/// Result of saturating a prolonged ideal.
#[derive(Clone, PartialEq, Debug)]
pub struct SaturatedIdeal {
    pub basis: GroebnerBasis,
    pub dimension: i64,
}

fn check_field(ring: &Arc<DiffRing>) -> Result<(), ProlongError> {
    if ring.field().is_rationals() {
        Ok(())
    } else {
        Err(ProlongError::NonConstantCoefficients)
    }
}

/// Prolonged ideal at level `t ≥` the maximal order of `Λ`.
pub fn prolong_ideal(set: &AutoreducedSet, t: u32) -> Result<ProlongedIdeal, ProlongError> {
    let order = set.max_order();
    if t < order {
        return Err(ProlongError::BelowOrder { t, order });
    }
    truncated_prolongation(set, t)
}

/// Like [`prolong_ideal`] but for any level; elements of order above `t`
/// contribute nothing.
pub fn truncated_prolongation(set: &AutoreducedSet, t: u32) -> Result<ProlongedIdeal, ProlongError> {
    let ring = set.ring();
    check_field(ring)?;
    let frame = NablaFrame::new(ring.m(), ring.n(), t);
    let mut generators = Vec::new();
    let mut provenance = Vec::new();
    let mut saturating = Vec::new();
    for (i, f) in set.elements().iter().enumerate() {
        let ord = f.order();
        if ord > t {
            continue;
        }
        for s in 0..=(t - ord) {
            for theta in DerivativeIndex::of_order(ring.m(), s) {
                let g = f.apply_theta(&theta)?;
                generators.push(to_frame(&g, &frame)?);
                provenance.push((i, theta));
            }
        }
        for h in [f.separant()?, f.initial()?] {
            let p = to_frame(&h, &frame)?;
            if !p.is_constant() && !saturating.contains(&p) {
                saturating.push(p);
            }
        }
    }
    Ok(ProlongedIdeal {
        t,
        frame,
        generators,
        provenance,
        saturating,
    })
}

fn to_frame(f: &DiffPoly, frame: &NablaFrame) -> Result<MultiPoly, ProlongError> {
    f.to_multi(&frame.indets, TermOrder::GrevLex)
        .ok_or(ProlongError::NonConstantCoefficients)
}

impl ProlongedIdeal {
    /// Saturates by the product of [`saturating`](Self::saturating) with one
    /// Rabinowitsch variable and returns the reduced basis and its dimension.
    pub fn saturate(&self) -> Result<SaturatedIdeal, ProlongError> {
        let n = self.frame.len();
        let order = TermOrder::GrevLex;
        let basis = if self.generators.is_empty() {
            GroebnerBasis::zero_ideal(n, order)
        } else if self.saturating.is_empty() {
            buchberger(&self.generators, order)?
        } else {
            let h = self
                .saturating
                .iter()
                .fold(MultiPoly::one(n, order), |acc, s| &acc * s);
            saturate(&self.generators, &h, order)?
        };
        let dimension = ideal_dimension(&basis);
        Ok(SaturatedIdeal { basis, dimension })
    }
}

/// `c_0 + Σ c_w · w` over the free order-`t` coordinates `w`, with
/// coefficients rational functions of the level-`(t − 1)` frame.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineExpr {
    pub constant: RatFunc,
    pub coeffs: BTreeMap<AlgIndet, RatFunc>,
}

impl AffineExpr {
    fn zero(nvars: usize) -> Self {
        AffineExpr {
            constant: RatFunc::zero(nvars),
            coeffs: BTreeMap::new(),
        }
    }

    fn add_scaled(&mut self, other: &AffineExpr, c: &RatFunc) {
        self.constant = &self.constant + &(&other.constant * c);
        for (w, a) in &other.coeffs {
            self.add_coeff(w, &(a * c));
        }
    }

    fn add_coeff(&mut self, w: &AlgIndet, a: &RatFunc) {
        let entry = self.coeffs.entry(w.clone()).or_insert_with(|| RatFunc::zero(a.nvars()));
        *entry = &*entry + a;
        if entry.is_zero() {
            self.coeffs.remove(w);
        }
    }

    /// Renders with the lower frame's names.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (w, a) in self.coeffs.iter().rev() {
            if a.is_one() {
                parts.push(w.to_string());
            } else {
                parts.push(format!("({})*{}", a.render(names), w));
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(self.constant.render(names));
        }
        parts.join(" + ")
    }

    /// As a rational function over `frame` (which must contain the lower
    /// frame as a prefix and every free coordinate).
    pub fn to_ratfunc(&self, frame: &NablaFrame) -> RatFunc {
        let n = frame.len();
        let lift = |r: &RatFunc| lift_ratfunc(r, n);
        let mut acc = lift(&self.constant);
        for (w, a) in &self.coeffs {
            let idx = frame.index_of(w).expect("free coordinate in frame");
            acc = &acc + &(&lift(a) * &RatFunc::var(n, idx));
        }
        acc
    }
}

/// Embeds a rational function in the first variables of a larger signature.
pub fn lift_ratfunc(r: &RatFunc, nvars: usize) -> RatFunc {
    let extra = nvars - r.nvars();
    let num = r.num().insert_vars(r.nvars(), extra);
    let den = r.den().insert_vars(r.nvars(), extra);
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// The order-`t` coordinates of a generic point, expressed through the free
/// ones (the order-`t` points of `B`) over the field of the level `t − 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineFiberModel {
    pub t: u32,
    pub lower: NablaFrame,
    /// Free order-`t` coordinates, increasing rank.
    pub basis: Vec<AlgIndet>,
    /// One expression per non-basis order-`t` coordinate, increasing rank.
    pub solved: Vec<(AlgIndet, AffineExpr)>,
    /// `(element index, θ)` used to solve each entry of `solved`.
    pub sources: Vec<(usize, DerivativeIndex)>,
}

impl AffineFiberModel {
    pub fn expression(&self, v: &AlgIndet) -> Option<&AffineExpr> {
        self.solved.iter().find(|(w, _)| w == v).map(|(_, e)| e)
    }

    /// Number of free coordinates.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Solves the order-`t` coordinates outside `B_t` for `t` above the maximal
/// order of `Λ`.
///
/// Coordinates are processed in increasing rank. For `ru` not in `B`, the
/// lowest-ranked `f` whose leader lies below `ru` gives `θ₂` with `ru` the
/// leader of `θ₂f`; that polynomial is linear in order-`t` coordinates with
/// coefficient `S_f` on `ru`, so `ru = −(c₀ + Σ c_w w) / S_f`, and the lower
/// `w` are replaced by their expressions found earlier.
pub fn affine_fiber(set: &AutoreducedSet, t: u32) -> Result<AffineFiberModel, ProlongError> {
    let ring = set.ring();
    check_field(ring)?;
    let order = set.max_order();
    if t <= order {
        return Err(ProlongError::NotAboveOrder { t, order });
    }
    let rep = InitialSetRep::from_leaders(set);
    let frame = NablaFrame::new(ring.m(), ring.n(), t);
    let lower = NablaFrame::new(ring.m(), ring.n(), t - 1);
    let nl = lower.len();
    let top = frame.top_range();
    let leaders = set.leaders();

    let mut basis = Vec::new();
    let mut solved: Vec<(AlgIndet, AffineExpr)> = Vec::new();
    let mut sources = Vec::new();
    for idx in top.clone() {
        let v = &frame.indets[idx];
        let p = ExpPoint::new(v.theta.exps().to_vec(), v.var);
        if rep.contains(&p) {
            basis.push(v.clone());
            continue;
        }
        let i = leaders
            .iter()
            .position(|u| v.is_derivative_of(u))
            .expect("point outside B lies above a leader");
        let theta2 = leaders[i].theta.quotient_of(&v.theta);
        let g = set.elements()[i].apply_theta(&theta2)?;
        let gp = to_frame(&g, &frame)?;

        // split gp = c0 + Σ c_w w over order-t coordinates w
        let mut c0 = gp.clone();
        let mut lin: Vec<(usize, MultiPoly)> = Vec::new();
        for w in top.clone() {
            let d = gp.degree_in(w);
            if d == 0 {
                continue;
            }
            if d > 1 {
                return Err(ProlongError::NotLinear(g.to_string(), t));
            }
            let c = gp.coefficients_in(w).swap_remove(1);
            if top.clone().any(|x| c.involves(x)) {
                return Err(ProlongError::NotLinear(g.to_string(), t));
            }
            lin.push((w, c));
            c0 = c0.eval_var_keep(w);
        }
        let down = |p: &MultiPoly| RatFunc::from_poly(truncate(p, nl));
        let sep = lin
            .iter()
            .find(|(w, _)| *w == idx)
            .map(|(_, c)| down(c))
            .ok_or(ProlongError::ZeroSeparant)?;
        let inv = sep.inv().map_err(|_| ProlongError::ZeroSeparant)?;
        let minus_inv = -&inv;

        let mut expr = AffineExpr::zero(nl);
        expr.constant = &down(&c0) * &minus_inv;
        for (w, c) in &lin {
            if *w == idx {
                continue;
            }
            let wv = &frame.indets[*w];
            debug_assert!(wv < v, "only lower order-t coordinates remain");
            let coeff = &down(c) * &minus_inv;
            match solved.iter().find(|(s, _)| s == wv) {
                Some((_, e)) => {
                    let e = e.clone();
                    expr.add_scaled(&e, &coeff);
                }
                None => expr.add_coeff(wv, &coeff),
            }
        }
        solved.push((v.clone(), expr));
        sources.push((i, theta2));
    }
    Ok(AffineFiberModel {
        t,
        lower,
        basis,
        solved,
        sources,
    })
}

/// Drops trailing variables that do not occur.
fn truncate(p: &MultiPoly, nvars: usize) -> MultiPoly {
    let map: Vec<usize> = (0..p.nvars()).map(|i| i.min(nvars.saturating_sub(1))).collect();
    debug_assert!((nvars..p.nvars()).all(|v| !p.involves(v)));
    p.remap(nvars, p.order(), &map)
}

trait EvalKeep {
    fn eval_var_keep(&self, var: usize) -> MultiPoly;
}

impl EvalKeep for MultiPoly {
    /// Sets `var` to zero, keeping the signature.
    fn eval_var_keep(&self, var: usize) -> MultiPoly {
        self.coefficients_in(var).swap_remove(0)
    }
}

/// Value of `δ_k c` for a level-`ℓ` coordinate `c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SectionValue {
    /// Another level-`ℓ` coordinate.
    Coordinate(AlgIndet),
    /// A free order-`(ℓ + 1)` coordinate: a fiber direction.
    Free(AlgIndet),
    /// A solved order-`(ℓ + 1)` coordinate.
    Affine(AffineExpr),
}

/// D-variety data at the prolongation bound: `V` at level `ℓ` and the
/// affine bundle `S` given by the sections `δ_k c`.
#[derive(Clone, PartialEq, Debug)]
pub struct DVarietyData {
    pub bound: ProlongationBound,
    pub v: ProlongedIdeal,
    pub v_saturated: SaturatedIdeal,
    pub fiber: AffineFiberModel,
    /// `sections[k-1][i]` is `δ_k` of frame coordinate `i`.
    pub sections: Vec<Vec<SectionValue>>,
    /// Fiber dimension `r = |B_{ℓ+1}| − |B_ℓ|`.
    pub r: u64,
}

impl DVarietyData {
    pub fn frame(&self) -> &NablaFrame {
        &self.v.frame
    }

    /// `δ_k c` as a rational function on `frame_{ℓ+1}`.
    pub fn section_ratfunc(&self, k: usize, i: usize, big: &NablaFrame) -> RatFunc {
        let n = big.len();
        match &self.sections[k - 1][i] {
            SectionValue::Coordinate(c) | SectionValue::Free(c) => {
                RatFunc::var(n, big.index_of(c).expect("coordinate in frame"))
            }
            SectionValue::Affine(e) => e.to_ratfunc(big),
        }
    }
}

/// Computes `ℓ`, `V = ∇_ℓ`, the fiber model at `ℓ + 1` and the fiber
/// dimension, checking that the model and the initial-set count agree.
pub fn extract_dvariety(set: &AutoreducedSet) -> Result<DVarietyData, ProlongError> {
    let bound = prolongation_bound(set);
    let l = bound.l;
    let v = prolong_ideal(set, l)?;
    let v_saturated = v.saturate()?;
    let fiber = affine_fiber(set, l + 1)?;
    let rep = InitialSetRep::from_leaders(set);
    let counted = rep.count_bt(l + 1) - rep.count_bt(l);
    let free = fiber.rank() as u64;
    if counted != free {
        return Err(ProlongError::FiberRankMismatch { counted, fiber: free });
    }
    let m = set.ring().m();
    let sections = (1..=m)
        .map(|k| {
            v.frame
                .indets
                .iter()
                .map(|c| {
                    let dc = c.derive(k);
                    if dc.order() <= l {
                        SectionValue::Coordinate(dc)
                    } else if fiber.basis.contains(&dc) {
                        SectionValue::Free(dc)
                    } else {
                        SectionValue::Affine(fiber.expression(&dc).expect("solved coordinate").clone())
                    }
                })
                .collect()
        })
        .collect();
    Ok(DVarietyData {
        bound,
        v,
        v_saturated,
        fiber,
        sections,
        r: counted,
    })
}

/// Checks the fiber model against the prolonged ideal: every generator of
/// level `t`, with solved coordinates substituted, has numerator in the
/// saturated level-`(t − 1)` ideal. Returns the generators that fail.
pub fn check_affine_fiber(set: &AutoreducedSet, model: &AffineFiberModel) -> Result<Vec<usize>, ProlongError> {
    let ideal = prolong_ideal(set, model.t)?;
    let lower = truncated_prolongation(set, model.t - 1)?.saturate()?;
    let frame = &ideal.frame;
    let n = frame.len();
    let nl = model.lower.len();
    // the lower basis stays a Gröbner basis after adjoining variables
    let lifted: Vec<MultiPoly> = lower.basis.gens().iter().map(|g| g.insert_vars(nl, n - nl)).collect();
    let lifted = if lifted.is_empty() {
        GroebnerBasis::zero_ideal(n, TermOrder::GrevLex)
    } else {
        buchberger(&lifted, TermOrder::GrevLex)?
    };
    let subst: BTreeMap<usize, RatFunc> = model
        .solved
        .iter()
        .map(|(v, e)| (frame.index_of(v).unwrap(), e.to_ratfunc(frame)))
        .collect();
    let mut failures = Vec::new();
    for (gi, g) in ideal.generators.iter().enumerate() {
        let value = substitute(g, &subst);
        if !normal_form(value.num(), &lifted).is_zero() {
            failures.push(gi);
        }
    }
    Ok(failures)
}

/// Substitutes rational functions for some variables of a polynomial.
pub fn substitute(p: &MultiPoly, subst: &BTreeMap<usize, RatFunc>) -> RatFunc {
    let n = p.nvars();
    let mut acc = RatFunc::zero(n);
    for (mono, c) in p.terms() {
        let mut term = RatFunc::constant(n, c.clone());
        for (v, e) in mono.exps().iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let base = match subst.get(&v) {
                Some(r) => r.clone(),
                None => RatFunc::var(n, v),
            };
            term = &term * &base.pow(*e);
        }
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn ring1() -> Arc<DiffRing> {
        DiffRing::over_q(1, 1)
    }

    fn d(r: &Arc<DiffRing>, e: &[u32]) -> DiffPoly {
        DiffPoly::indet(r, r.indet(e, 1))
    }

    #[test]
    fn frames() {
        let f = NablaFrame::new(1, 1, 2);
        assert_eq!(f.names(), vec!["u1", "d1*u1", "d1^2*u1"]);
        assert_eq!(NablaFrame::new(2, 1, 1).names(), vec!["u1", "d1*u1", "d2*u1"]);
        assert_eq!(NablaFrame::new(2, 2, 2).len(), 12);
    }

    #[test]
    fn prolonged_ideals() {
        let r = ring1();
        let set = AutoreducedSet::new(&r, vec![&d(&r, &[1]) - &d(&r, &[0])]).unwrap();
        let p = prolong_ideal(&set, 2).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.saturate().unwrap().dimension, 1);
        assert!(matches!(prolong_ideal(&set, 0), Err(ProlongError::BelowOrder { .. })));

        let r2 = DiffRing::over_q(2, 1);
        let heat = AutoreducedSet::new(&r2, vec![&d(&r2, &[0, 1]) - &d(&r2, &[2, 0])]).unwrap();
        let p = prolong_ideal(&heat, 2).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.saturate().unwrap().dimension, 5);

        let sq = AutoreducedSet::new(&r, vec![&d(&r, &[1]).pow(2) - &d(&r, &[0])]).unwrap();
        let p = prolong_ideal(&sq, 2).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.saturate().unwrap().dimension, 1);
    }

    #[test]
    fn affine_fibers() {
        let r = ring1();
        let lin = AutoreducedSet::new(&r, vec![&d(&r, &[1]) - &d(&r, &[0])]).unwrap();
        let m = affine_fiber(&lin, 2).unwrap();
        assert!(m.basis.is_empty());
        let e = m.expression(&r.indet(&[2], 1)).unwrap();
        assert!(e.coeffs.is_empty());
        assert_eq!(e.constant, RatFunc::var(2, 1));
        assert!(matches!(affine_fiber(&lin, 1), Err(ProlongError::NotAboveOrder { .. })));

        let sq = AutoreducedSet::new(&r, vec![&d(&r, &[1]).pow(2) - &d(&r, &[0])]).unwrap();
        let m = affine_fiber(&sq, 2).unwrap();
        let e = m.expression(&r.indet(&[2], 1)).unwrap();
        assert_eq!(e.constant, RatFunc::constant(2, rat(1, 2)));
        assert!(check_affine_fiber(&sq, &m).unwrap().is_empty());

        let r2 = DiffRing::over_q(2, 1);
        let heat = AutoreducedSet::new(&r2, vec![&d(&r2, &[0, 1]) - &d(&r2, &[2, 0])]).unwrap();
        let m = affine_fiber(&heat, 3).unwrap();
        assert_eq!(m.basis, vec![r2.indet(&[1, 2], 1), r2.indet(&[0, 3], 1)]);
        // δ₁²δ₂u = δ₂²u (free), δ₁³u = δ₁δ₂u
        let e = m.expression(&r2.indet(&[2, 1], 1)).unwrap();
        assert_eq!(e.coeffs.len(), 0);
        assert!(check_affine_fiber(&heat, &m).unwrap().is_empty());
    }

    #[test]
    fn saturated_dimension_matches_counts() {
        let r = ring1();
        let r2 = DiffRing::over_q(2, 1);
        let u = d(&r2, &[0, 0]);
        let sets = vec![
            AutoreducedSet::new(&r, vec![&d(&r, &[1]) - &d(&r, &[0])]).unwrap(),
            AutoreducedSet::new(&r, vec![&d(&r, &[1]).pow(2) - &d(&r, &[0])]).unwrap(),
            AutoreducedSet::new(&r2, vec![&d(&r2, &[0, 1]) - &d(&r2, &[2, 0])]).unwrap(),
            AutoreducedSet::new(&r2, vec![&d(&r2, &[2, 0]) - &u, &d(&r2, &[0, 2]) - &u]).unwrap(),
        ];
        for set in &sets {
            let rep = InitialSetRep::from_leaders(set);
            let l = prolongation_bound(set).l;
            for t in 0..=l + 2 {
                let dim = truncated_prolongation(set, t).unwrap().saturate().unwrap().dimension;
                assert_eq!(dim, rep.count_bt(t) as i64, "t={t}");
            }
        }
    }

    #[test]
    fn dvariety_examples() {
        let r = ring1();
        let lin = AutoreducedSet::new(&r, vec![&d(&r, &[1]) - &d(&r, &[0])]).unwrap();
        let dv = extract_dvariety(&lin).unwrap();
        assert_eq!(dv.bound.l, 1);
        assert_eq!(dv.r, 0);
        assert_eq!(dv.sections[0][0], SectionValue::Coordinate(r.indet(&[1], 1)));
        match &dv.sections[0][1] {
            SectionValue::Affine(e) => assert_eq!(e.constant, RatFunc::var(2, 1)),
            other => panic!("unexpected {other:?}"),
        }

        let r2 = DiffRing::over_q(2, 1);
        let heat = AutoreducedSet::new(&r2, vec![&d(&r2, &[0, 1]) - &d(&r2, &[2, 0])]).unwrap();
        let dv = extract_dvariety(&heat).unwrap();
        assert_eq!(dv.bound.l, 2);
        assert_eq!(dv.r, 2);
    }
}
