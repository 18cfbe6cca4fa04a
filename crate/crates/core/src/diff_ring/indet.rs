//! Derivative operators, algebraic indeterminates and the orderly ranking.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A derivative operator `δ_m^{e_m} ⋯ δ_1^{e_1}`, stored as `(e_1, …, e_m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DerivativeIndex {
    exps: SmallVec<[u32; 4]>,
}

impl DerivativeIndex {
    /// The identity operator in `m` derivations.
    pub fn identity(m: usize) -> Self {
        DerivativeIndex {
            exps: SmallVec::from_elem(0, m),
        }
    }

    pub fn new<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        DerivativeIndex {
            exps: exps.into_iter().collect(),
        }
    }

    /// `δ_k` for `k` in `1..=m`.
    pub fn single(m: usize, k: usize) -> Self {
        let mut d = Self::identity(m);
        d.exps[k - 1] = 1;
        d
    }

    pub fn m(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `δ_k`, `k` 1-based.
    pub fn exp(&self, k: usize) -> u32 {
        self.exps[k - 1]
    }

    pub fn order(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    /// Composition with `δ_k`.
    pub fn bump(&self, k: usize) -> Self {
        let mut d = self.clone();
        d.exps[k - 1] += 1;
        d
    }

    pub fn compose(&self, other: &DerivativeIndex) -> Self {
        DerivativeIndex {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self` is a factor of `other`: `other = θ · self` for some `θ`.
    pub fn divides(&self, other: &DerivativeIndex) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming [`divides`](Self::divides).
    pub fn quotient_of(&self, other: &DerivativeIndex) -> Self {
        DerivativeIndex {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect(),
        }
    }

    /// All operators of order exactly `t` in `m` derivations, in increasing
    /// `(e_m, …, e_1)` lexicographic order.
    pub fn of_order(m: usize, t: u32) -> Vec<DerivativeIndex> {
        fn rec(pos: usize, left: u32, cur: &mut [u32], out: &mut Vec<DerivativeIndex>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(DerivativeIndex::new(cur.iter().copied()));
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
        }
        if m == 0 {
            return if t == 0 { vec![DerivativeIndex::identity(0)] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, t, &mut vec![0u32; m], &mut out);
        out.sort_by(|a, b| a.exps.iter().rev().cmp(b.exps.iter().rev()));
        out
    }

    /// Renders as `d1^2*d2`; empty for the identity.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("d{}", i + 1)),
                _ => parts.push(format!("d{}^{}", i + 1, e)),
            }
        }
        parts.join("*")
    }
}

/// The algebraic indeterminate `θ u_j`; `var` is 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgIndet {
    pub theta: DerivativeIndex,
    pub var: usize,
}

/// Sort key of the ranking: `(order, j, e_m, …, e_1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RankKey(pub SmallVec<[u32; 6]>);

impl AlgIndet {
    pub fn new(theta: DerivativeIndex, var: usize) -> Self {
        AlgIndet { theta, var }
    }

    /// The undifferentiated `u_j`.
    pub fn base(m: usize, var: usize) -> Self {
        AlgIndet {
            theta: DerivativeIndex::identity(m),
            var,
        }
    }

    pub fn order(&self) -> u32 {
        self.theta.order()
    }

    pub fn rank_key(&self) -> RankKey {
        let mut k: SmallVec<[u32; 6]> = SmallVec::new();
        k.push(self.theta.order());
        k.push(self.var as u32);
        k.extend(self.theta.exps.iter().rev().copied());
        RankKey(k)
    }

    pub fn derive(&self, k: usize) -> Self {
        AlgIndet {
            theta: self.theta.bump(k),
            var: self.var,
        }
    }

    pub fn apply(&self, theta: &DerivativeIndex) -> Self {
        AlgIndet {
            theta: self.theta.compose(theta),
            var: self.var,
        }
    }

    /// `self` is a derivative (possibly improper) of `other`.
    pub fn is_derivative_of(&self, other: &AlgIndet) -> bool {
        self.var == other.var && other.theta.divides(&self.theta)
    }

    pub fn is_proper_derivative_of(&self, other: &AlgIndet) -> bool {
        self != other && self.is_derivative_of(other)
    }

    /// Exponent point `(e_1, …, e_m, j)`.
    pub fn exp_point(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.theta.exps.to_vec();
        p.push(self.var as u32);
        p
    }
}

impl Ord for AlgIndet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.theta
            .order()
            .cmp(&other.theta.order())
            .then(self.var.cmp(&other.var))
            .then_with(|| self.theta.exps.iter().rev().cmp(other.theta.exps.iter().rev()))
    }
}

impl PartialOrd for AlgIndet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AlgIndet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.theta.render();
        if t.is_empty() {
            write!(f, "u{}", self.var)
        } else {
            write!(f, "{}*u{}", t, self.var)
        }
    }
}

/// All indeterminates of order at most `t` in increasing rank.
pub fn indets_up_to(m: usize, n: usize, t: u32) -> Vec<AlgIndet> {
    let mut out = Vec::new();
    for order in 0..=t {
        for var in 1..=n {
            for theta in DerivativeIndex::of_order(m, order) {
                out.push(AlgIndet::new(theta, var));
            }
        }
    }
    out
}
