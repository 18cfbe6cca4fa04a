//! Exterior algebra over an exact field, and executable checks of two
//! wedge-product lemmas: the annihilator lemma for decomposable forms and
//! the finiteness lemma for subspaces over a subfield.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::algebra::{lcm, ExactMatrix, Field, MultiPoly, RatFunc, Rational};

/// Largest supported ambient dimension (basis subsets are `u64` bitmasks).
pub const MAX_DIM: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("ambient dimension {0} exceeds {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected a grade-1 vector, found grade {0}")]
    NotGradeOne(usize),
    #[error("grades differ: {0} vs {1}")]
    GradeMismatch(usize, usize),
    #[error("wedge length must be at least one")]
    ZeroLength,
    #[error("coefficient fields differ")]
    FieldMismatch,
}

/// A homogeneous element of `Λ^p(F^N)`, stored sparsely on basis subsets.
///
/// The key of `e_{i_1}∧⋯∧e_{i_p}` (with `i_1 < ⋯ < i_p`, 1-based) is the
/// bitmask with bits `i_1 - 1, …, i_p - 1` set. Zero coefficients are never
/// stored, and grade 0 holds scalars under the empty mask.
#[derive(Clone, PartialEq, Debug)]
pub struct ExtVector<F: Field> {
    dim: usize,
    grade: usize,
    zero: F,
    coeffs: BTreeMap<u64, F>,
}

fn sign_of_merge(a: u64, b: u64) -> bool {
    // number of pairs (i in a, j in b) with i > j
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        let above = if j >= 63 { 0 } else { a & (!0u64 << (j + 1)) };
        inversions += above.count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

impl<F: Field> ExtVector<F> {
    /// The zero element of grade `grade`; `proto` fixes the field context.
    pub fn zero(dim: usize, grade: usize, proto: &F) -> Result<Self, ExteriorError> {
        if dim > MAX_DIM {
            return Err(ExteriorError::DimensionTooLarge(dim));
        }
        Ok(ExtVector {
            dim,
            grade,
            zero: proto.zero_like(),
            coeffs: BTreeMap::new(),
        })
    }

    pub fn scalar(dim: usize, c: F) -> Result<Self, ExteriorError> {
        let mut v = Self::zero(dim, 0, &c)?;
        if !c.is_zero() {
            v.coeffs.insert(0, c);
        }
        Ok(v)
    }

    /// `c · e_{i_1}∧⋯∧e_{i_p}` for 1-based indices in any order; repeated
    /// indices give zero and the permutation sign is applied.
    pub fn basis(dim: usize, indices: &[usize], c: F) -> Result<Self, ExteriorError> {
        let mut v = Self::zero(dim, indices.len(), &c)?;
        let mut mask = 0u64;
        let mut odd = false;
        for &i in indices {
            if i == 0 || i > dim {
                return Err(ExteriorError::IndexOutOfRange { index: i, dim });
            }
            let bit = 1u64 << (i - 1);
            if mask & bit != 0 {
                return Ok(v);
            }
            odd ^= sign_of_merge(mask, bit);
            mask |= bit;
        }
        if !c.is_zero() {
            v.coeffs.insert(mask, if odd { c.neg() } else { c });
        }
        Ok(v)
    }

    /// The grade-1 vector `Σ coords[i] e_{i+1}`.
    pub fn from_coords(coords: &[F], proto: &F) -> Result<Self, ExteriorError> {
        let mut v = Self::zero(coords.len(), 1, proto)?;
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                v.coeffs.insert(1u64 << i, c.clone());
            }
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn field_zero(&self) -> &F {
        &self.zero
    }

    /// `(mask, coefficient)` pairs in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &F)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, mask: u64) -> F {
        self.coeffs.get(&mask).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Coordinates of a grade-1 vector.
    pub fn coords(&self) -> Vec<F> {
        (0..self.dim).map(|i| self.coeff(1u64 << i)).collect()
    }

    fn check_same(&self, other: &Self) -> Result<(), ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::AmbientMismatch(self.dim, other.dim));
        }
        if self.zero != other.zero {
            return Err(ExteriorError::FieldMismatch);
        }
        Ok(())
    }

    fn insert_add(map: &mut BTreeMap<u64, F>, key: u64, c: F) {
        match map.get_mut(&key) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    map.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                if !c.is_zero() {
                    map.insert(key, c);
                }
            }
        }
    }

    /// Sum of two elements of the same grade (a zero summand adopts the
    /// other's grade).
    pub fn add(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_same(other)?;
        let grade = if self.is_zero() { other.grade } else { self.grade };
        if !self.is_zero() && !other.is_zero() && self.grade != other.grade {
            return Err(ExteriorError::GradeMismatch(self.grade, other.grade));
        }
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            Self::insert_add(&mut coeffs, *k, c.clone());
        }
        Ok(ExtVector {
            dim: self.dim,
            grade,
            zero: self.zero.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        ExtVector {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(k, v)| (*k, v.mul(c))).collect()
        };
        ExtVector {
            coeffs,
            ..self.clone()
        }
    }

    /// `self ∧ other`; zero when the grades exceed the dimension.
    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_same(other)?;
        let mut coeffs = BTreeMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if a & b != 0 {
                    continue;
                }
                let p = x.mul(y);
                let p = if sign_of_merge(*a, *b) { p.neg() } else { p };
                Self::insert_add(&mut coeffs, a | b, p);
            }
        }
        Ok(ExtVector {
            dim: self.dim,
            grade: self.grade + other.grade,
            zero: self.zero.clone(),
            coeffs,
        })
    }

    /// `v_1 ∧ ⋯ ∧ v_k`; the empty product is the scalar 1.
    pub fn wedge_all(vs: &[Self], dim: usize, proto: &F) -> Result<Self, ExteriorError> {
        let mut acc = Self::scalar(dim, proto.one_like())?;
        for v in vs {
            acc = acc.wedge(v)?;
        }
        Ok(acc)
    }
}

fn render_mask(mask: u64) -> String {
    if mask == 0 {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        parts.push(format!("e{}", rest.trailing_zeros() + 1));
        rest &= rest - 1;
    }
    parts.join("∧")
}

impl<F: Field + fmt::Display> fmt::Display for ExtVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let one = self.zero.one_like();
        let minus_one = one.neg();
        for (i, (mask, c)) in self.coeffs.iter().enumerate() {
            let (negative, abs) = {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) if !rest.contains(['+', '-', ' ']) => (true, c.neg()),
                    _ => (false, c.clone()),
                }
            };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let text = abs.to_string();
            let text = if text.contains([' ', '+']) || text.contains('-') && !text.starts_with('-') {
                format!("({text})")
            } else {
                text
            };
            if *mask == 0 {
                write!(f, "{text}")?;
            } else if abs == one || (negative && *c == minus_one) {
                write!(f, "{}", render_mask(*mask))?;
            } else {
                write!(f, "{text}*{}", render_mask(*mask))?;
            }
        }
        Ok(())
    }
}

/// Which hypothesis of the annihilator lemma an instance fails.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum A2Precondition {
    /// Some input has the wrong grade or ambient space.
    Shape,
    /// `γ = α_1 ∧ ⋯ ∧ α_ℓ` is zero.
    GammaZero,
    /// `ω ∧ α_i ≠ 0` for this (0-based) `i`.
    OmegaNotAnnihilated(usize),
    /// `ω` is not a wedge product of grade-1 vectors.
    OmegaNotDecomposable,
}

/// Outcome of checking one instance of: if `γ ≠ 0`, `ω` is decomposable,
/// `ω ∧ α_i = 0` for all `i` and `β ∧ γ = 0`, then `β ∧ ω = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum A2Verdict {
    /// Hypotheses hold and `β ∧ ω = 0`.
    Confirmed,
    /// `β ∧ γ ≠ 0`; nothing to check.
    Vacuous,
    /// `ω = 0`.
    Trivial,
    PreconditionFailed(A2Precondition),
    /// Hypotheses hold but `β ∧ ω ≠ 0`.
    Violated,
}

impl A2Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            A2Verdict::Confirmed => "confirmed",
            A2Verdict::Vacuous => "vacuous",
            A2Verdict::Trivial => "trivial",
            A2Verdict::PreconditionFailed(_) => "precondition failed",
            A2Verdict::Violated => "violated",
        }
    }

    /// Anything but a counterexample.
    pub fn is_consistent(&self) -> bool {
        !matches!(self, A2Verdict::Violated)
    }
}

/// Dimension over `F` of `{α : α ∧ ω = 0}`; equals the grade exactly when a
/// nonzero `ω` is decomposable.
pub fn annihilator_dimension<F: Field>(omega: &ExtVector<F>) -> usize {
    let n = omega.dim;
    let columns: Vec<ExtVector<F>> = (1..=n)
        .map(|i| {
            ExtVector::basis(n, &[i], omega.zero.one_like())
                .and_then(|e| e.wedge(omega))
                .expect("same ambient")
        })
        .collect();
    let rows: Vec<Vec<F>> = coordinate_rows(&columns, &omega.zero);
    if rows.is_empty() {
        return n;
    }
    let m = transpose(&rows, &omega.zero);
    n - ExactMatrix::from_rows(m, omega.zero.clone()).rank()
}

/// Coordinates of several vectors on the union of their supports.
fn coordinate_rows<F: Field>(vs: &[ExtVector<F>], zero: &F) -> Vec<Vec<F>> {
    let mut masks: Vec<u64> = vs.iter().flat_map(|v| v.coeffs.keys().copied()).collect();
    masks.sort_unstable();
    masks.dedup();
    if masks.is_empty() {
        return vec![];
    }
    vs.iter()
        .map(|v| {
            masks
                .iter()
                .map(|m| v.coeffs.get(m).cloned().unwrap_or_else(|| zero.zero_like()))
                .collect()
        })
        .collect()
}

fn transpose<F: Field>(rows: &[Vec<F>], zero: &F) -> Vec<Vec<F>> {
    let c = rows.first().map_or(0, |r| r.len());
    (0..c)
        .map(|j| rows.iter().map(|r| r.get(j).cloned().unwrap_or_else(|| zero.zero_like())).collect())
        .collect()
}

/// Checks one instance of the annihilator lemma. Preconditions are
/// verified rather than assumed.
pub fn lemma_a2_check<F: Field>(alphas: &[ExtVector<F>], omega: &ExtVector<F>, beta: &ExtVector<F>) -> A2Verdict {
    let dim = omega.dim;
    let shape_ok = beta.grade == 1
        && beta.dim == dim
        && beta.zero == omega.zero
        && alphas.iter().all(|a| a.grade == 1 && a.dim == dim && a.zero == omega.zero);
    if !shape_ok {
        return A2Verdict::PreconditionFailed(A2Precondition::Shape);
    }
    let gamma = ExtVector::wedge_all(alphas, dim, &omega.zero).expect("shapes checked");
    if gamma.is_zero() {
        return A2Verdict::PreconditionFailed(A2Precondition::GammaZero);
    }
    if omega.is_zero() {
        return A2Verdict::Trivial;
    }
    for (i, a) in alphas.iter().enumerate() {
        if !omega.wedge(a).expect("shapes checked").is_zero() {
            return A2Verdict::PreconditionFailed(A2Precondition::OmegaNotAnnihilated(i));
        }
    }
    if annihilator_dimension(omega) != omega.grade {
        return A2Verdict::PreconditionFailed(A2Precondition::OmegaNotDecomposable);
    }
    if !beta.wedge(&gamma).expect("shapes checked").is_zero() {
        return A2Verdict::Vacuous;
    }
    if beta.wedge(omega).expect("shapes checked").is_zero() {
        A2Verdict::Confirmed
    } else {
        A2Verdict::Violated
    }
}

/// One instance `(α_1..α_ℓ, ω, β)` of the annihilator lemma.
#[derive(Clone, PartialEq, Debug)]
pub struct A2Instance {
    pub alphas: Vec<ExtVector<Rational>>,
    pub omega: ExtVector<Rational>,
    pub beta: ExtVector<Rational>,
}

fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> ExtVector<Rational> {
    let coords: Vec<Rational> = (0..dim).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect();
    ExtVector::from_coords(&coords, &Rational::zero()).expect("dim within range")
}

/// A random instance in dimension `2..=max_dim` built to satisfy the
/// hypotheses generically: `ω` is the wedge of random combinations of the
/// `α_i` and some extra vectors, and `β` is a random combination of the `α_i`.
pub fn random_a2_instance<R: Rng>(rng: &mut R, max_dim: usize) -> A2Instance {
    let dim = rng.gen_range(2..=max_dim.max(2));
    let l = rng.gen_range(1..=dim);
    let p = rng.gen_range(l..=dim);
    let alphas: Vec<ExtVector<Rational>> = (0..l).map(|_| random_vector(rng, dim)).collect();
    let extras: Vec<ExtVector<Rational>> = (l..p).map(|_| random_vector(rng, dim)).collect();
    let pool: Vec<&ExtVector<Rational>> = alphas.iter().chain(&extras).collect();
    let combo = |rng: &mut R, from: &[&ExtVector<Rational>]| {
        from.iter().fold(ExtVector::zero(dim, 1, &Rational::zero()).unwrap(), |acc, v| {
            let c = Rational::from_integer(rng.gen_range(-2i64..=2).into());
            acc.add(&v.scale(&c)).unwrap()
        })
    };
    let factors: Vec<ExtVector<Rational>> = (0..p).map(|_| combo(rng, &pool)).collect();
    let omega = ExtVector::wedge_all(&factors, dim, &Rational::zero()).unwrap();
    let alpha_refs: Vec<&ExtVector<Rational>> = alphas.iter().collect();
    let beta = combo(rng, &alpha_refs);
    A2Instance { alphas, omega, beta }
}

/// Report of the finiteness-lemma probe on a finite sample of a
/// `k`-subspace `U ⊆ K^N`, with `k = Q` and `K` a rational function field.
#[derive(Clone, PartialEq, Debug)]
pub struct A1Report {
    pub l: usize,
    /// `dim_k` of the span of the sample.
    pub dim_u_k: usize,
    /// `dim_K` of the span of the sample.
    pub dim_u_big: usize,
    /// `dim_k B_ℓ`, `B_ℓ` the `k`-span of `ℓ`-fold wedges of elements of `U`.
    pub dim_b: usize,
    /// Indices (into the `k`-basis of `U`) of `u_1..u_ℓ` with nonzero wedge `β`.
    pub beta_factors: Option<Vec<usize>>,
    /// `dim_k A`, `A = {a ∈ K : aβ ∈ B_ℓ}`.
    pub dim_a: Option<usize>,
    /// `dim_k (U ∩ span_K{u_1..u_{ℓ-1}})`.
    pub dim_intersection: Option<usize>,
    /// `dim_k` of the image of `v ↦ u_1 ∧ ⋯ ∧ u_{ℓ-1} ∧ v` on `U`.
    pub dim_image: Option<usize>,
    /// Every coefficient `a_i` of every intersection basis vector lies in `A`.
    pub coefficients_in_a: bool,
    /// The image lies inside `B_ℓ`.
    pub image_in_b: bool,
    /// `dim_k U = dim kernel + dim image`.
    pub rank_nullity: bool,
}

impl A1Report {
    /// All executable steps of the argument hold on this sample.
    pub fn holds(&self) -> bool {
        self.coefficients_in_a && self.image_in_b && self.rank_nullity
    }
}

/// Expands rational-function vectors into rational coordinates after
/// multiplying by one common denominator; `Q`-linear relations among the
/// inputs are exactly those among the outputs.
fn q_expand(vectors: &[Vec<RatFunc>]) -> Vec<Vec<Rational>> {
    let Some(first) = vectors.iter().flatten().next() else {
        return vectors.iter().map(|_| vec![]).collect();
    };
    let nv = first.nvars();
    let mut common = MultiPoly::one(nv, first.den().order());
    for c in vectors.iter().flatten() {
        common = lcm(&common, c.den());
    }
    let polys: Vec<Vec<MultiPoly>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|c| c.num() * &common.exact_div(c.den()).expect("lcm divisible"))
                .collect()
        })
        .collect();
    let mut columns: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    for v in &polys {
        for (i, p) in v.iter().enumerate() {
            for (m, _) in p.terms() {
                let next = columns.len();
                columns.entry((i, m.exps().to_vec())).or_insert(next);
            }
        }
    }
    polys
        .iter()
        .map(|v| {
            let mut row = vec![Rational::zero(); columns.len()];
            for (i, p) in v.iter().enumerate() {
                for (m, c) in p.terms() {
                    row[columns[&(i, m.exps().to_vec())]] = c.clone();
                }
            }
            row
        })
        .collect()
}

fn q_rank(vectors: &[Vec<RatFunc>]) -> usize {
    let rows = q_expand(vectors);
    if rows.iter().all(|r| r.is_empty()) {
        return 0;
    }
    ExactMatrix::from_rows(rows, Rational::zero()).rank()
}

/// `Q`-relations `c` with `Σ c_j v_j = 0`.
fn q_relations(vectors: &[Vec<RatFunc>]) -> Vec<Vec<Rational>> {
    let rows = q_expand(vectors);
    let width = rows.first().map_or(0, |r| r.len());
    if width == 0 {
        return (0..vectors.len())
            .map(|i| (0..vectors.len()).map(|j| Rational::from_integer((i == j).into())).collect())
            .collect();
    }
    let t = transpose(&rows, &Rational::zero());
    ExactMatrix::from_rows(t, Rational::zero()).nullspace()
}

/// Coordinates of wedges on a shared index set.
fn wedge_coords(vs: &[ExtVector<RatFunc>], proto: &RatFunc) -> Vec<Vec<RatFunc>> {
    let rows = coordinate_rows(vs, proto);
    if rows.is_empty() {
        vs.iter().map(|_| vec![]).collect()
    } else {
        rows
    }
}

fn q_combination(coeffs: &[Rational], vs: &[ExtVector<RatFunc>], dim: usize, proto: &RatFunc) -> ExtVector<RatFunc> {
    coeffs.iter().zip(vs).fold(
        ExtVector::zero(dim, 1, proto).expect("dim checked"),
        |acc, (c, v)| acc.add(&v.scale(&RatFunc::constant(proto.nvars(), c.clone()))).expect("same shape"),
    )
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Runs the constructive steps of the finiteness lemma on a finite sample
/// spanning `U` over `Q`: computes `B_ℓ`, picks a nonzero `β = u_1∧⋯∧u_ℓ`,
/// computes `A`, and checks that every element of
/// `U ∩ span_K{u_1..u_{ℓ-1}}` has its coefficients in `A` and that the
/// wedge map `v ↦ u_1∧⋯∧u_{ℓ-1}∧v` accounts for `dim_k U`.
pub fn lemma_a1_span_probe(sample: &[ExtVector<RatFunc>], l: usize) -> Result<A1Report, ExteriorError> {
    if l == 0 {
        return Err(ExteriorError::ZeroLength);
    }
    let Some(first) = sample.first() else {
        return Ok(A1Report {
            l,
            dim_u_k: 0,
            dim_u_big: 0,
            dim_b: 0,
            beta_factors: None,
            dim_a: None,
            dim_intersection: None,
            dim_image: None,
            coefficients_in_a: true,
            image_in_b: true,
            rank_nullity: true,
        });
    };
    let dim = first.dim;
    let proto = first.zero.clone();
    for v in sample {
        if v.grade != 1 {
            return Err(ExteriorError::NotGradeOne(v.grade));
        }
        first.check_same(v)?;
    }

    // a Q-basis of U, chosen greedily from the sample
    let mut basis: Vec<ExtVector<RatFunc>> = Vec::new();
    for v in sample {
        let mut trial: Vec<Vec<RatFunc>> = basis.iter().map(|b| b.coords()).collect();
        trial.push(v.coords());
        if q_rank(&trial) > basis.len() {
            basis.push(v.clone());
        }
    }
    let dim_u_k = basis.len();
    let dim_u_big = if basis.is_empty() {
        0
    } else {
        ExactMatrix::from_rows(basis.iter().map(|b| b.coords()).collect(), proto.clone()).rank()
    };

    let index_sets = subsets(dim_u_k, l);
    let wedges: Vec<ExtVector<RatFunc>> = index_sets
        .iter()
        .map(|s| {
            let fs: Vec<ExtVector<RatFunc>> = s.iter().map(|&i| basis[i].clone()).collect();
            ExtVector::wedge_all(&fs, dim, &proto).expect("same shape")
        })
        .collect();
    let b_coords = wedge_coords(&wedges, &proto);
    let dim_b = q_rank(&b_coords);

    let Some(pos) = wedges.iter().position(|w| !w.is_zero()) else {
        return Ok(A1Report {
            l,
            dim_u_k,
            dim_u_big,
            dim_b,
            beta_factors: None,
            dim_a: None,
            dim_intersection: None,
            dim_image: None,
            coefficients_in_a: true,
            image_in_b: true,
            rank_nullity: true,
        });
    };
    let factors = index_sets[pos].clone();
    let beta = wedges[pos].clone();
    let us: Vec<ExtVector<RatFunc>> = factors.iter().map(|&i| basis[i].clone()).collect();

    // A ≅ B ∩ Kβ: Q-combinations Σ c_j w_j proportional to β
    let (s_mask, beta_s) = beta.coeffs.iter().next().map(|(k, c)| (*k, c.clone())).expect("nonzero");
    let mut masks: Vec<u64> = wedges.iter().chain([&beta]).flat_map(|w| w.coeffs.keys().copied()).collect();
    masks.sort_unstable();
    masks.dedup();
    let proportional: Vec<Vec<RatFunc>> = wedges
        .iter()
        .map(|w| {
            let ws = w.coeff(s_mask);
            masks.iter().map(|&t| &(&w.coeff(t) * &beta_s) - &(&ws * &beta.coeff(t))).collect()
        })
        .collect();
    let relations = q_relations(&proportional);
    let a_rows: Vec<Vec<RatFunc>> = relations
        .iter()
        .map(|c| {
            let bs = c
                .iter()
                .zip(&wedges)
                .fold(RatFunc::zero(proto.nvars()), |acc, (ci, w)| {
                    &acc + &w.coeff(s_mask).scale(ci)
                });
            vec![bs.checked_div(&beta_s).expect("nonzero")]
        })
        .collect();
    let dim_a = q_rank(&a_rows);

    // the wedge map v ↦ u_1∧⋯∧u_{ℓ-1}∧v on the basis of U
    let head = ExtVector::wedge_all(&us[..l - 1], dim, &proto).expect("same shape");
    let images: Vec<ExtVector<RatFunc>> = basis.iter().map(|v| head.wedge(v).expect("same shape")).collect();
    let mut joint = images.clone();
    joint.extend(wedges.iter().cloned());
    let joint_coords = wedge_coords(&joint, &proto);
    let (img_coords, b_only) = joint_coords.split_at(images.len());
    let dim_image = q_rank(img_coords);
    let image_in_b = q_rank(&joint_coords) == q_rank(b_only);

    let kernel = q_relations(&wedge_coords(&images, &proto));
    let dim_intersection = kernel.len();

    // each kernel vector v = Σ a_i u_i over K with a_i ∈ A
    let mut coefficients_in_a = true;
    if l >= 2 {
        let cols: Vec<Vec<RatFunc>> = us[..l - 1].iter().map(|u| u.coords()).collect();
        let system = ExactMatrix::from_rows(transpose(&cols, &proto), proto.clone());
        for c in &kernel {
            let v = q_combination(c, &basis, dim, &proto);
            let Some(a) = system.solve(&v.coords()) else {
                coefficients_in_a = false;
                continue;
            };
            for ai in a {
                let mut trial = a_rows.clone();
                trial.push(vec![ai]);
                if q_rank(&trial) != dim_a {
                    coefficients_in_a = false;
                }
            }
        }
    } else {
        coefficients_in_a = kernel.is_empty();
    }

    Ok(A1Report {
        l,
        dim_u_k,
        dim_u_big,
        dim_b,
        beta_factors: Some(factors),
        dim_a: Some(dim_a),
        dim_intersection: Some(dim_intersection),
        dim_image: Some(dim_image),
        coefficients_in_a,
        image_in_b,
        rank_nullity: dim_u_k == dim_intersection + dim_image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(i: usize) -> ExtVector<Rational> {
        ExtVector::basis(4, &[i], rat(1, 1)).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let e12 = e(1).wedge(&e(2)).unwrap();
        assert_eq!(e12, ExtVector::basis(4, &[1, 2], rat(1, 1)).unwrap());
        assert_eq!(e(2).wedge(&e(1)).unwrap(), e12.neg());
        assert!(e(3).wedge(&e(3)).unwrap().is_zero());
        let s = e(1).add(&e(2)).unwrap();
        let d = e(1).sub(&e(2)).unwrap();
        assert_eq!(s.wedge(&d).unwrap(), e12.scale(&rat(-2, 1)));
        assert_eq!(s.wedge(&d).unwrap().to_string(), "-2*e1∧e2");
        assert_eq!(ExtVector::basis(4, &[3, 1, 2], rat(1, 1)).unwrap(), ExtVector::basis(4, &[1, 2, 3], rat(1, 1)).unwrap());
        assert!(ExtVector::basis(4, &[5], rat(1, 1)).is_err());
        let other = ExtVector::basis(3, &[1], rat(1, 1)).unwrap();
        assert_eq!(e(1).wedge(&other), Err(ExteriorError::AmbientMismatch(4, 3)));
    }

    #[test]
    fn a2_examples() {
        let alphas = vec![e(1), e(2)];
        let omega = e(1).wedge(&e(2)).unwrap();
        let beta = e(1).add(&e(2)).unwrap();
        assert_eq!(lemma_a2_check(&alphas, &omega, &beta), A2Verdict::Confirmed);
        assert_eq!(lemma_a2_check(&alphas, &omega, &e(3)), A2Verdict::Vacuous);
        let zero = ExtVector::zero(4, 2, &rat(0, 1)).unwrap();
        assert_eq!(lemma_a2_check(&alphas, &zero, &e(3)), A2Verdict::Trivial);
        assert_eq!(
            lemma_a2_check(&[e(1), e(1)], &omega, &beta),
            A2Verdict::PreconditionFailed(A2Precondition::GammaZero)
        );
        assert_eq!(
            lemma_a2_check(&[e(3)], &omega, &beta),
            A2Verdict::PreconditionFailed(A2Precondition::OmegaNotAnnihilated(0))
        );
        let sum = omega.add(&e(3).wedge(&e(4)).unwrap()).unwrap();
        assert_eq!(annihilator_dimension(&sum), 0);
        assert_eq!(annihilator_dimension(&omega), 2);
    }

    #[test]
    fn random_a2_instances_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut confirmed = 0;
        for _ in 0..100 {
            let inst = random_a2_instance(&mut rng, 6);
            let v = lemma_a2_check(&inst.alphas, &inst.omega, &inst.beta);
            assert!(v.is_consistent());
            confirmed += (v == A2Verdict::Confirmed) as usize;
        }
        assert!(confirmed > 20);
    }

    fn t_vec(coords: &[RatFunc]) -> ExtVector<RatFunc> {
        ExtVector::from_coords(coords, &RatFunc::zero(1)).unwrap()
    }

    #[test]
    fn a1_examples() {
        let one = RatFunc::one(1);
        let zero = RatFunc::zero(1);
        let t = RatFunc::var(1, 0);
        let e1 = t_vec(&[one.clone(), zero.clone()]);
        let e2 = t_vec(&[zero.clone(), one.clone()]);
        let r = lemma_a1_span_probe(&[e1.clone(), e2], 2).unwrap();
        assert_eq!((r.dim_u_k, r.dim_b, r.dim_a), (2, 1, Some(1)));
        assert!(r.holds());

        let te1 = e1.scale(&t);
        let r = lemma_a1_span_probe(&[e1.clone(), te1.clone()], 1).unwrap();
        assert_eq!((r.dim_u_k, r.dim_u_big, r.dim_b, r.dim_a), (2, 1, 2, Some(2)));
        assert!(r.holds());

        let r = lemma_a1_span_probe(&[e1.clone(), te1], 2).unwrap();
        assert_eq!((r.dim_b, r.beta_factors.clone()), (0, None));

        let r = lemma_a1_span_probe(&[t_vec(&[zero.clone(), zero])], 2).unwrap();
        assert_eq!((r.dim_u_k, r.dim_u_big, r.dim_b), (0, 0, 0));
        assert!(lemma_a1_span_probe(&[e1], 0).is_err());
    }

    #[test]
    fn a1_intersection_coefficients() {
        // U = span_Q{e1, t e1, e2}, ℓ = 2: β = e1∧e2, U ∩ K e1 = span{e1, t e1}
        let one = RatFunc::one(1);
        let zero = RatFunc::zero(1);
        let t = RatFunc::var(1, 0);
        let e1 = t_vec(&[one.clone(), zero.clone()]);
        let e2 = t_vec(&[zero, one]);
        let r = lemma_a1_span_probe(&[e1.clone(), e1.scale(&t), e2], 2).unwrap();
        assert_eq!(r.dim_b, 2);
        assert_eq!(r.dim_a, Some(2));
        assert_eq!(r.dim_intersection, Some(2));
        assert_eq!(r.dim_image, Some(1));
        assert!(r.holds());
    }
}
