//! Leader exponent sets `E ⊂ ℕ^m × {1..n}`, the initial sets `B` they cut
//! out, the dimension function `t ↦ |B_t|`, removable points and the
//! prolongation bound.

use std::fmt;

use crate::diff_ring::AutoreducedSet;

/// A point `(r_1, …, r_m, j)` of `ℕ^m × {1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExpPoint {
    pub r: Vec<u32>,
    pub j: usize,
}

impl ExpPoint {
    pub fn new(r: Vec<u32>, j: usize) -> Self {
        ExpPoint { r, j }
    }

    /// `|r| = r_1 + ⋯ + r_m`.
    pub fn norm(&self) -> u32 {
        self.r.iter().sum()
    }

    /// The partial order: same `j` and componentwise `≤`.
    pub fn le(&self, other: &ExpPoint) -> bool {
        self.j == other.j && self.r.iter().zip(&other.r).all(|(a, b)| a <= b)
    }

    /// `self + e_k` for 0-based direction `k`.
    pub fn step(&self, k: usize) -> ExpPoint {
        let mut r = self.r.clone();
        r[k] += 1;
        ExpPoint { r, j: self.j }
    }

    /// `[r_1, …, r_m, j]`.
    pub fn to_vec(&self) -> Vec<u32> {
        let mut v = self.r.clone();
        v.push(self.j as u32);
        v
    }
}

impl fmt::Display for ExpPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_vec().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `B = {p : p ≱ e for all e ∈ E}`, represented by `E` alone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InitialSetRep {
    m: usize,
    n: usize,
    e: Vec<ExpPoint>,
}

impl InitialSetRep {
    pub fn new(m: usize, n: usize, mut e: Vec<ExpPoint>) -> Self {
        assert!(e.iter().all(|p| p.r.len() == m && (1..=n).contains(&p.j)));
        e.sort();
        e.dedup();
        InitialSetRep { m, n, e }
    }

    /// `E` = exponent points of the leaders of `Λ`.
    pub fn from_leaders(set: &AutoreducedSet) -> Self {
        let ring = set.ring();
        let e = set
            .leaders()
            .into_iter()
            .map(|v| ExpPoint::new(v.theta.exps().to_vec(), v.var))
            .collect();
        Self::new(ring.m(), ring.n(), e)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[ExpPoint] {
        &self.e
    }

    /// `p ∈ B`.
    pub fn contains(&self, p: &ExpPoint) -> bool {
        !self.e.iter().any(|e| e.le(p))
    }

    /// `|B_t|`: points of `B` with `|p| ≤ t`, by simplex enumeration.
    pub fn count_bt(&self, t: u32) -> u64 {
        let mut count = 0u64;
        for j in 1..=self.n {
            for_each_in_simplex(self.m, t, |r| {
                if self.contains(&ExpPoint::new(r.to_vec(), j)) {
                    count += 1;
                }
            });
        }
        count
    }

    /// `p ∈ B` and `p + e_k ∉ B` in every direction.
    pub fn is_maximal(&self, p: &ExpPoint) -> bool {
        self.contains(p) && (0..self.m).all(|k| !self.contains(&p.step(k)))
    }

    /// Points of `B` whose removal leaves a downward-closed set, that is the
    /// maximal points of `B`. Coordinate `i` of such a point is at most
    /// `M_i − 1` where `M_i` is the largest `e_i` over generators with the
    /// same `j`, so enumerating that box is exhaustive.
    pub fn removable_points(&self) -> Vec<ExpPoint> {
        let mut out = Vec::new();
        for j in 1..=self.n {
            let ej: Vec<&ExpPoint> = self.e.iter().filter(|e| e.j == j).collect();
            if ej.is_empty() {
                continue;
            }
            let bounds: Vec<u32> = (0..self.m)
                .map(|i| ej.iter().map(|e| e.r[i]).max().unwrap())
                .collect();
            if bounds.iter().any(|b| *b == 0) {
                continue;
            }
            for_each_in_box(&bounds, |r| {
                let p = ExpPoint::new(r.to_vec(), j);
                if self.is_maximal(&p) {
                    out.push(p);
                }
            });
        }
        out.sort();
        out
    }

    /// Values `|B_0|, …, |B_T|`.
    pub fn dimension_function(&self, max_t: u32) -> DimensionFunction {
        DimensionFunction::from_values((0..=max_t).map(|t| self.count_bt(t)).collect())
    }
}

/// Calls `f` on every `r ∈ ℕ^m` with `|r| ≤ t`, in lexicographic order.
pub fn for_each_in_simplex<F: FnMut(&[u32])>(m: usize, t: u32, mut f: F) {
    fn rec<F: FnMut(&[u32])>(pos: usize, left: u32, cur: &mut [u32], f: &mut F) {
        if pos == cur.len() {
            f(cur);
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, f);
        }
        cur[pos] = 0;
    }
    rec(0, t, &mut vec![0; m], &mut f);
}

/// Calls `f` on every `r` with `0 ≤ r_i < bounds_i`.
fn for_each_in_box<F: FnMut(&[u32])>(bounds: &[u32], mut f: F) {
    fn rec<F: FnMut(&[u32])>(pos: usize, bounds: &[u32], cur: &mut [u32], f: &mut F) {
        if pos == cur.len() {
            f(cur);
            return;
        }
        for e in 0..bounds[pos] {
            cur[pos] = e;
            rec(pos + 1, bounds, cur, f);
        }
        cur[pos] = 0;
    }
    rec(0, bounds, &mut vec![0; bounds.len()], &mut f);
}

/// The sequence `|B_t|` for `t = 0..=T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimensionFunction {
    pub values: Vec<u64>,
    /// Smallest `k` such that the `k`-th finite differences are constant over
    /// at least the last three available entries, when that happens; a hint
    /// of the degree of the eventual polynomial, not a proof.
    pub apparent_degree: Option<usize>,
}

impl DimensionFunction {
    pub fn from_values(values: Vec<u64>) -> Self {
        let mut diffs: Vec<i128> = values.iter().map(|v| *v as i128).collect();
        let mut apparent_degree = None;
        for k in 0..values.len() {
            if diffs.len() >= 3 {
                let tail = &diffs[diffs.len() - 3..];
                if tail.iter().all(|d| *d == tail[0]) {
                    apparent_degree = Some(k);
                    break;
                }
            } else {
                break;
            }
            diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        }
        DimensionFunction {
            values,
            apparent_degree,
        }
    }
}

/// The bound `ℓ = max(ℓ₁, ℓ₂)` and its ingredients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProlongationBound {
    pub l: u32,
    /// Maximum order of an element.
    pub l1: u32,
    /// Maximum `|r|` over removable points, 0 when there are none.
    pub l2: u32,
    pub removable: Vec<ExpPoint>,
}

pub fn prolongation_bound(set: &AutoreducedSet) -> ProlongationBound {
    let rep = InitialSetRep::from_leaders(set);
    let l1 = set.max_order();
    let removable = rep.removable_points();
    let l2 = removable.iter().map(|p| p.norm()).max().unwrap_or(0);
    ProlongationBound {
        l: l1.max(l2),
        l1,
        l2,
        removable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::diff_ring::{DiffPoly, DiffRing};

    fn pt(c: &[u32]) -> ExpPoint {
        let (j, r) = c.split_last().unwrap();
        ExpPoint::new(r.to_vec(), *j as usize)
    }

    fn rep(m: usize, pts: &[&[u32]]) -> InitialSetRep {
        InitialSetRep::new(m, 1, pts.iter().map(|p| pt(p)).collect())
    }

    #[test]
    fn leaders_to_e() {
        let r = DiffRing::over_q(2, 1);
        let v = |e: &[u32]| DiffPoly::indet(&r, r.indet(e, 1));
        let u = v(&[0, 0]);
        let set = AutoreducedSet::new(&r, vec![&v(&[2, 0]) - &u, &v(&[0, 2]) - &u]).unwrap();
        assert_eq!(
            InitialSetRep::from_leaders(&set).generators(),
            &[pt(&[0, 2, 1]), pt(&[2, 0, 1])]
        );
        let heat = AutoreducedSet::new(&r, vec![&v(&[0, 1]) - &v(&[2, 0])]).unwrap();
        assert_eq!(InitialSetRep::from_leaders(&heat).generators(), &[pt(&[2, 0, 1])]);
        let c = AutoreducedSet::new(&r, vec![&u - &DiffPoly::constant(&r, rat(5, 1))]).unwrap();
        let b = InitialSetRep::from_leaders(&c);
        assert_eq!(b.generators(), &[pt(&[0, 0, 1])]);
        assert_eq!(b.count_bt(4), 0);
    }

    #[test]
    fn membership() {
        let b = rep(2, &[&[2, 0, 1], &[0, 2, 1]]);
        assert!(b.contains(&pt(&[1, 1, 1])));
        assert!(!b.contains(&pt(&[2, 5, 1])));
        assert!(rep(2, &[]).contains(&pt(&[7, 7, 1])));
    }

    #[test]
    fn counts() {
        let b = rep(2, &[&[2, 0, 1], &[0, 2, 1]]);
        assert_eq!((0..4).map(|t| b.count_bt(t)).collect::<Vec<_>>(), vec![1, 3, 4, 4]);
        let heat = rep(2, &[&[2, 0, 1]]);
        assert_eq!((0..4).map(|t| heat.count_bt(t)).collect::<Vec<_>>(), vec![1, 3, 5, 7]);
        let free = rep(1, &[]);
        assert_eq!((0..4).map(|t| free.count_bt(t)).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(heat.dimension_function(6).apparent_degree, Some(1));
    }

    #[test]
    fn removable() {
        assert_eq!(rep(2, &[&[2, 0, 1], &[0, 2, 1]]).removable_points(), vec![pt(&[1, 1, 1])]);
        assert!(rep(2, &[&[2, 0, 1]]).removable_points().is_empty());
        assert_eq!(rep(1, &[&[1, 1]]).removable_points(), vec![pt(&[0, 1])]);
    }

    #[test]
    fn bound_examples() {
        let r = DiffRing::over_q(2, 1);
        let v = |e: &[u32]| DiffPoly::indet(&r, r.indet(e, 1));
        let u = v(&[0, 0]);
        let set = AutoreducedSet::new(&r, vec![&v(&[2, 0]) - &u, &v(&[0, 2]) - &u]).unwrap();
        let b = prolongation_bound(&set);
        assert_eq!((b.l, b.l1, b.l2), (2, 2, 2));
        assert_eq!(b.removable, vec![pt(&[1, 1, 1])]);
        let heat = AutoreducedSet::new(&r, vec![&v(&[0, 1]) - &v(&[2, 0])]).unwrap();
        let b = prolongation_bound(&heat);
        assert_eq!((b.l, b.l1, b.l2), (2, 2, 0));

        let r1 = DiffRing::over_q(1, 1);
        let u = DiffPoly::u(&r1, 1);
        let du = DiffPoly::indet(&r1, r1.indet(&[1], 1));
        let b = prolongation_bound(&AutoreducedSet::new(&r1, vec![&du - &u]).unwrap());
        assert_eq!((b.l, b.l1, b.l2), (1, 1, 0));
        assert_eq!(b.removable, vec![pt(&[0, 1])]);
    }
}
