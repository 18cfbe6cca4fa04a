//! Differential polynomial rings in `n` differential indeterminates over a
//! field with `m` commuting derivations: derivative operators, the orderly
//! ranking, leaders, separants, initials, autoreduced sets and Ritt-Kolchin
//! reduction with checkable certificates.

mod autoreduced;
mod indet;
mod poly;
mod reduce;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, RatFunc};

pub use autoreduced::{is_autoreduced, poly_rank_compare, set_rank_compare, AutoreducedSet, Violation, ViolationKind};
pub use indet::{indets_up_to, AlgIndet, DerivativeIndex, RankKey};
pub use poly::{DiffMonomial, DiffPoly};
pub use reduce::{is_reduced_wrt, ritt_reduce, Certificate, CertificateTerm};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiffError {
    #[error("element of the coefficient field has no leader")]
    ConstantInput,
    #[error("derivation index {k} exceeds m={m}")]
    InvalidDerivation { k: usize, m: usize },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("not autoreduced: {0}")]
    NotAutoreduced(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The coefficient field: the rationals, or `Q(t_1..t_s)` with a declared
/// value `δ_k(t_i)` for every derivation and generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffField {
    params: usize,
    /// `actions[k-1][i-1] = δ_k(t_i)`.
    actions: Vec<Vec<RatFunc>>,
}

impl CoeffField {
    pub fn rationals() -> Self {
        CoeffField {
            params: 0,
            actions: Vec::new(),
        }
    }

    /// `Q(t_1..t_s)`; `actions[k-1][i-1]` is `δ_k(t_i)`, each a rational
    /// function in `s` variables. Missing entries mean `δ_k(t_i) = 0`.
    pub fn rational_functions(s: usize, m: usize, actions: Vec<Vec<RatFunc>>) -> Result<Self, DiffError> {
        let mut full = vec![vec![RatFunc::zero(s); s]; m];
        for (k, row) in actions.into_iter().enumerate() {
            if k >= m {
                return Err(DiffError::InvalidDerivation { k: k + 1, m });
            }
            for (i, a) in row.into_iter().enumerate() {
                if i >= s || a.nvars() != s {
                    return Err(DiffError::SignatureMismatch(format!(
                        "action on t{} must be a function of t1..t{s}",
                        i + 1
                    )));
                }
                full[k][i] = a;
            }
        }
        Ok(CoeffField {
            params: s,
            actions: full,
        })
    }

    /// `Q(t_1..t_s)` with `δ_k = ∂/∂t_k` for `k ≤ s` (and zero beyond).
    pub fn partials(s: usize, m: usize) -> Self {
        let actions = (0..m)
            .map(|k| {
                (0..s)
                    .map(|i| if i == k { RatFunc::one(s) } else { RatFunc::zero(s) })
                    .collect()
            })
            .collect();
        CoeffField { params: s, actions }
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn is_rationals(&self) -> bool {
        self.params == 0
    }

    /// Every derivation is zero on the field.
    pub fn is_constant_field(&self) -> bool {
        self.actions.iter().flatten().all(|a| a.is_zero())
    }

    pub fn action(&self, k: usize, i: usize) -> &RatFunc {
        &self.actions[k - 1][i - 1]
    }

    pub fn param_names(&self) -> Vec<String> {
        (1..=self.params).map(|i| format!("t{i}")).collect()
    }

    /// `δ_k c = Σ_i ∂c/∂t_i · δ_k(t_i)`.
    pub fn derive(&self, c: &RatFunc, k: usize) -> RatFunc {
        let mut acc = RatFunc::zero(self.params);
        if self.params == 0 {
            return acc;
        }
        for i in 0..self.params {
            let a = &self.actions[k - 1][i];
            if a.is_zero() {
                continue;
            }
            let d = c.derivative(i);
            if !d.is_zero() {
                acc = &acc + &(&d * a);
            }
        }
        acc
    }

    pub fn describe(&self) -> String {
        if self.params == 0 {
            "Q".into()
        } else {
            format!("Q({})", self.param_names().join(","))
        }
    }
}

/// The ring `F{u_1..u_n}` with `m` derivations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffRing {
    m: usize,
    n: usize,
    field: CoeffField,
}

impl DiffRing {
    pub fn new(m: usize, n: usize, field: CoeffField) -> Arc<DiffRing> {
        assert!(m >= 1 && n >= 1, "need at least one derivation and one indeterminate");
        Arc::new(DiffRing { m, n, field })
    }

    /// Constant-coefficient ring over the rationals.
    pub fn over_q(m: usize, n: usize) -> Arc<DiffRing> {
        Self::new(m, n, CoeffField::rationals())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &CoeffField {
        &self.field
    }

    pub fn contains(&self, v: &AlgIndet) -> bool {
        v.theta.m() == self.m && (1..=self.n).contains(&v.var)
    }

    /// `θ u_j` from raw exponents `(e_1..e_m)`.
    pub fn indet(&self, exps: &[u32], var: usize) -> AlgIndet {
        assert_eq!(exps.len(), self.m);
        AlgIndet::new(DerivativeIndex::new(exps.iter().copied()), var)
    }
}

/// Compares two indeterminates in the ranking, checking signatures.
pub fn rank_compare(ring: &DiffRing, v: &AlgIndet, w: &AlgIndet) -> Result<std::cmp::Ordering, DiffError> {
    for x in [v, w] {
        if !ring.contains(x) {
            return Err(DiffError::SignatureMismatch(format!(
                "{x} is not an indeterminate of a ring with m={}, n={}",
                ring.m, ring.n
            )));
        }
    }
    Ok(v.cmp(w))
}
