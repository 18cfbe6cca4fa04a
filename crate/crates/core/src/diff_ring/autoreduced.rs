//! Ranks of differential polynomials, autoreduced sets and their ordering.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::indet::AlgIndet;
use super::poly::DiffPoly;
use super::{DiffError, DiffRing};

/// Compares `rank(f) = (u_f, d_f)` pair-lexicographically; elements of the
/// coefficient field rank below everything else.
pub fn poly_rank_compare(f: &DiffPoly, g: &DiffPoly) -> Ordering {
    f.rank().cmp(&g.rank())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    /// An element lies in the coefficient field.
    Constant,
    /// `g` contains a proper derivative of `u_f`.
    ProperDerivative(AlgIndet),
    /// `g` contains `u_f` to a power at least `d_f`.
    LeaderDegree { degree: u32, bound: u32 },
}

/// Why a list fails to be autoreduced: element `g` is not reduced with
/// respect to element `f` (indices into the input list).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub f: usize,
    pub g: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::Constant => write!(out, "element {} lies in the coefficient field", self.g),
            ViolationKind::ProperDerivative(v) => write!(
                out,
                "element {} contains {v}, a proper derivative of the leader of element {}",
                self.g, self.f
            ),
            ViolationKind::LeaderDegree { degree, bound } => write!(
                out,
                "element {} contains the leader of element {} to degree {degree} >= {bound}",
                self.g, self.f
            ),
        }
    }
}

/// Checks that every element is reduced with respect to every other one.
pub fn is_autoreduced(elems: &[DiffPoly]) -> Result<(), Violation> {
    let mut ranks = Vec::with_capacity(elems.len());
    for (i, f) in elems.iter().enumerate() {
        match f.rank() {
            Some(r) => ranks.push(r),
            None => {
                return Err(Violation {
                    f: i,
                    g: i,
                    kind: ViolationKind::Constant,
                })
            }
        }
    }
    for (i, (uf, df)) in ranks.iter().enumerate() {
        for (j, g) in elems.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(v) = g.indets().into_iter().rev().find(|v| v.is_proper_derivative_of(uf)) {
                return Err(Violation {
                    f: i,
                    g: j,
                    kind: ViolationKind::ProperDerivative(v),
                });
            }
            let degree = g.degree_in(uf);
            if degree >= *df {
                return Err(Violation {
                    f: i,
                    g: j,
                    kind: ViolationKind::LeaderDegree { degree, bound: *df },
                });
            }
        }
    }
    Ok(())
}

/// A nonempty-element autoreduced set, stored by increasing rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutoreducedSet {
    ring: Arc<DiffRing>,
    elems: Vec<DiffPoly>,
}

impl AutoreducedSet {
    pub fn new(ring: &Arc<DiffRing>, elems: Vec<DiffPoly>) -> Result<Self, DiffError> {
        if let Some(bad) = elems.iter().find(|f| f.ring() != ring) {
            return Err(DiffError::SignatureMismatch(format!(
                "{bad} belongs to another ring"
            )));
        }
        is_autoreduced(&elems).map_err(|v| DiffError::NotAutoreduced(v.to_string()))?;
        let mut elems = elems;
        elems.sort_by(poly_rank_compare);
        Ok(AutoreducedSet {
            ring: ring.clone(),
            elems,
        })
    }

    pub fn ring(&self) -> &Arc<DiffRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[DiffPoly] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Leaders in increasing rank.
    pub fn leaders(&self) -> Vec<AlgIndet> {
        self.elems.iter().map(|f| f.leader().expect("nonconstant")).collect()
    }

    /// Maximum order of an element.
    pub fn max_order(&self) -> u32 {
        self.elems.iter().map(|f| f.order()).max().unwrap_or(0)
    }
}

/// Orders autoreduced sets: compare ranks elementwise in increasing order;
/// the first strict difference decides. When one set extends the other with
/// rank-equal elements, the longer set is the lower one.
pub fn set_rank_compare(a: &AutoreducedSet, b: &AutoreducedSet) -> Ordering {
    for (f, g) in a.elems.iter().zip(&b.elems) {
        match poly_rank_compare(f, g) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}
