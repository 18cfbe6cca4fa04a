//! D-varieties given by `m` polynomial vector fields on affine space:
//! invariance and D-constant tests, Darboux polynomials, first integrals
//! and logarithmic derivatives.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    canonical_span_basis, rational_eigen, AlgebraError, ExactMatrix, Monomial, MultiPoly, RatFunc, Rational,
    TermOrder, UniPoly,
};
use crate::groebner::{buchberger, elimination_ideal, normal_form, rational_points, GroebnerBasis};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DVarietyError {
    #[error("degree bound must be positive")]
    ZeroDegree,
    #[error("derivations do not commute: [d{k}, d{l}] x{j} = {value}")]
    NonCommuting { k: usize, l: usize, j: usize, value: String },
    #[error("denominator vanishes identically on V")]
    DenominatorOnV,
    #[error("logarithmic derivative of zero")]
    ZeroInput,
    #[error("search over a proper subvariety V is not supported")]
    ProperSubvariety,
    #[error("field shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `m` derivations of `Q[x_1..x_n]` given by `δ_k(x_j)`, optionally
/// restricted to `V = V(ideal)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DSpec {
    n: usize,
    /// `fields[k-1][j-1] = δ_k(x_j)`.
    fields: Vec<Vec<MultiPoly>>,
    ideal: Vec<MultiPoly>,
}

impl DSpec {
    pub fn new(n: usize, fields: Vec<Vec<MultiPoly>>, ideal: Vec<MultiPoly>) -> Result<Self, DVarietyError> {
        if fields.is_empty() {
            return Err(DVarietyError::Shape("at least one derivation is required".into()));
        }
        for row in &fields {
            if row.len() != n || row.iter().any(|p| p.nvars() != n) {
                return Err(DVarietyError::Shape(format!("each derivation needs {n} components in {n} variables")));
            }
        }
        if ideal.iter().any(|p| p.nvars() != n) {
            return Err(DVarietyError::Shape("ideal generators in the wrong ring".into()));
        }
        let fields = fields
            .into_iter()
            .map(|row| row.into_iter().map(|p| p.with_order(TermOrder::GrevLex)).collect())
            .collect();
        let ideal = ideal.into_iter().map(|p| p.with_order(TermOrder::GrevLex)).collect();
        Ok(DSpec { n, fields, ideal })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.fields.len()
    }

    pub fn field(&self, k: usize, j: usize) -> &MultiPoly {
        &self.fields[k - 1][j - 1]
    }

    pub fn ideal(&self) -> &[MultiPoly] {
        &self.ideal
    }

    /// Variable names: `x, y, z` for up to three variables, else `x1..xn`.
    pub fn var_names(&self) -> Vec<String> {
        var_names(self.n)
    }

    /// `δ_k f = Σ_j ∂f/∂x_j · δ_k(x_j)`.
    pub fn apply(&self, k: usize, f: &MultiPoly) -> MultiPoly {
        let f = f.with_order(TermOrder::GrevLex);
        let mut acc = MultiPoly::zero(self.n, TermOrder::GrevLex);
        for j in 0..self.n {
            let d = f.derivative(j);
            if !d.is_zero() {
                acc = &acc + &(&d * &self.fields[k - 1][j]);
            }
        }
        acc
    }

    /// Quotient rule.
    pub fn apply_ratfunc(&self, k: usize, f: &RatFunc) -> RatFunc {
        let (p, q) = (f.num(), f.den());
        let num = &(&self.apply(k, p) * q) - &(p * &self.apply(k, q));
        RatFunc::new(num, q * q).expect("nonzero denominator")
    }

    /// Maximal total degree of the components of `δ_k`.
    pub fn degree(&self, k: usize) -> i64 {
        self.fields[k - 1]
            .iter()
            .map(|p| p.total_degree().map_or(-1, |d| d as i64))
            .max()
            .unwrap_or(-1)
    }

    /// Every component has degree at most one.
    pub fn is_affine(&self) -> bool {
        (1..=self.m()).all(|k| self.degree(k) <= 1)
    }

    fn ideal_basis(&self, extra: &[MultiPoly]) -> Result<GroebnerBasis, DVarietyError> {
        let gens: Vec<MultiPoly> = self.ideal.iter().chain(extra).cloned().collect();
        if gens.iter().all(|g| g.is_zero()) {
            return Ok(GroebnerBasis::zero_ideal(self.n, TermOrder::GrevLex));
        }
        Ok(buchberger(&gens, TermOrder::GrevLex)?)
    }

    /// Checks `δ_kδ_l(x_j) = δ_lδ_k(x_j)` modulo the ideal of `V`.
    pub fn check_commuting(&self) -> Result<(), DVarietyError> {
        let gb = self.ideal_basis(&[])?;
        for k in 1..=self.m() {
            for l in (k + 1)..=self.m() {
                for j in 1..=self.n {
                    let a = self.apply(k, self.field(l, j));
                    let b = self.apply(l, self.field(k, j));
                    let nf = normal_form(&(&a - &b), &gb);
                    if !nf.is_zero() {
                        return Err(DVarietyError::NonCommuting {
                            k,
                            l,
                            j,
                            value: nf.render(&self.var_names()),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Outcome of an invariance test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvarianceVerdict {
    pub invariant: bool,
    /// `(k, generator index, nonzero normal form of δ_k g)` on failure.
    pub witness: Option<(usize, usize, MultiPoly)>,
}

/// `Y = V(gens)` is a D-subvariety: every `δ_k g` lies in `⟨gens⟩ + I(V)`.
pub fn is_dsubvariety(spec: &DSpec, gens: &[MultiPoly], check_commuting: bool) -> Result<InvarianceVerdict, DVarietyError> {
    if check_commuting {
        spec.check_commuting()?;
    }
    let gens: Vec<MultiPoly> = gens.iter().map(|g| g.with_order(TermOrder::GrevLex)).collect();
    let gb = spec.ideal_basis(&gens)?;
    for (i, g) in gens.iter().enumerate() {
        for k in 1..=spec.m() {
            let nf = normal_form(&spec.apply(k, g), &gb);
            if !nf.is_zero() {
                return Ok(InvarianceVerdict {
                    invariant: false,
                    witness: Some((k, i, nf)),
                });
            }
        }
    }
    Ok(InvarianceVerdict {
        invariant: true,
        witness: None,
    })
}

/// `f` is a D-constant: `δ_k f` vanishes on `V` for every `k`.
pub fn is_dconstant(f: &RatFunc, spec: &DSpec) -> Result<bool, DVarietyError> {
    let gb = spec.ideal_basis(&[])?;
    if normal_form(f.den(), &gb).is_zero() {
        return Err(DVarietyError::DenominatorOnV);
    }
    for k in 1..=spec.m() {
        let d = spec.apply_ratfunc(k, f);
        if !normal_form(d.num(), &gb).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Irreducibility information attached to a Darboux polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Irreducibility {
    /// Involves one variable and is irreducible over Q.
    Irreducible,
    /// Involves one variable and factors over Q.
    Reducible,
    /// Multivariate; not examined.
    NotChecked,
}

impl Irreducibility {
    pub fn label(&self) -> &'static str {
        match self {
            Irreducibility::Irreducible => "irreducible (univariate, verified)",
            Irreducibility::Reducible => "reducible (univariate, verified)",
            Irreducibility::NotChecked => "not checked",
        }
    }
}

/// `f` with `δ_k f = K_k f`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DarbouxResult {
    pub f: MultiPoly,
    pub cofactors: Vec<MultiPoly>,
    pub degree: u32,
    pub irreducibility: Irreducibility,
}

impl DarbouxResult {
    /// Re-checks `δ_k f = K_k f` exactly.
    pub fn verify(&self, spec: &DSpec) -> bool {
        (1..=spec.m()).all(|k| spec.apply(k, &self.f) == &self.cofactors[k - 1] * &self.f)
    }
}

/// How cofactors are found.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DarbouxMethod {
    /// Eigen path when every component has degree at most one, else Gröbner.
    Auto,
    /// Joint rational eigenspaces of the derivations on polynomials of degree `≤ d`.
    Eigen,
    /// Bilinear system in the coefficients of `f` and `K`, normalized by the
    /// leading monomial of `f` and solved with Gröbner bases.
    Groebner,
}

impl DarbouxMethod {
    pub fn name(&self) -> &'static str {
        match self {
            DarbouxMethod::Auto => "auto",
            DarbouxMethod::Eigen => "eigen",
            DarbouxMethod::Groebner => "groebner",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DarbouxReport {
    pub results: Vec<DarbouxResult>,
    pub method: DarbouxMethod,
    /// Some eigenvalues were irrational (eigen path) or cofactor values had
    /// to be sampled (Gröbner path), so other Darboux polynomials may exist.
    pub incomplete: bool,
    pub cofactor_degree_bounds: Vec<i64>,
}

/// Monomials of degree `≤ d` in `n` variables, highest first under grevlex.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == cur.len() {
            out.push(Monomial::new(cur.iter().copied()));
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; n], &mut out);
    out.sort_by(|a, b| TermOrder::GrevLex.cmp(b, a));
    out
}

fn poly_from_coords(monos: &[Monomial], v: &[Rational]) -> MultiPoly {
    let n = monos.first().map_or(0, |m| m.nvars());
    MultiPoly::from_terms(
        n,
        TermOrder::GrevLex,
        monos.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Canonical basis of a space of polynomials given by coordinate vectors
/// over `monos` (highest first); with `mod_constants` the constant
/// coordinate is dropped first, giving the quotient by constants.
fn canonical_polys(monos: &[Monomial], vectors: Vec<Vec<Rational>>, mod_constants: bool) -> Vec<MultiPoly> {
    let vectors: Vec<Vec<Rational>> = if mod_constants {
        let ci = monos.iter().position(|m| m.is_one()).expect("constant monomial");
        vectors
            .into_iter()
            .map(|mut v| {
                v[ci] = Rational::zero();
                v
            })
            .collect()
    } else {
        vectors
    };
    canonical_span_basis(&vectors, &Rational::zero())
        .into_iter()
        .map(|v| poly_from_coords(monos, &v))
        .filter(|p| !p.is_zero())
        .collect()
}

fn irreducibility_of(f: &MultiPoly) -> Irreducibility {
    let support = f.support();
    if support.len() != 1 {
        return Irreducibility::NotChecked;
    }
    let u = UniPoly::from_multi(f, support[0]).expect("univariate");
    if u.is_irreducible() {
        Irreducibility::Irreducible
    } else {
        Irreducibility::Reducible
    }
}

fn make_result(f: MultiPoly, cofactors: Vec<MultiPoly>) -> DarbouxResult {
    DarbouxResult {
        degree: f.total_degree().unwrap_or(0),
        irreducibility: irreducibility_of(&f),
        f,
        cofactors,
    }
}

fn cmp_poly(a: &MultiPoly, b: &MultiPoly) -> Ordering {
    match (a.as_constant(), b.as_constant()) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => {
            for (s, t) in a.terms().iter().zip(b.terms()) {
                let o = TermOrder::GrevLex.cmp(&s.0, &t.0).then_with(|| s.1.cmp(&t.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            a.len().cmp(&b.len())
        }
    }
}

fn sort_results(results: &mut [DarbouxResult]) {
    results.sort_by(|a, b| {
        a.cofactors
            .iter()
            .zip(&b.cofactors)
            .map(|(x, y)| cmp_poly(x, y))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.degree.cmp(&b.degree))
            .then_with(|| cmp_poly(&a.f, &b.f))
    });
}

/// Darboux polynomials of degree `1..=d`: for every cofactor tuple found, a
/// canonical basis of the space of such `f` (modulo constants when all
/// cofactors vanish). Cofactor degrees are bounded by `deg δ_k − 1`.
pub fn darboux_search(spec: &DSpec, d: u32, method: DarbouxMethod, check_commuting: bool) -> Result<DarbouxReport, DVarietyError> {
    if d == 0 {
        return Err(DVarietyError::ZeroDegree);
    }
    if !spec.ideal.is_empty() {
        return Err(DVarietyError::ProperSubvariety);
    }
    if check_commuting {
        spec.check_commuting()?;
    }
    let method = match method {
        DarbouxMethod::Auto if spec.is_affine() => DarbouxMethod::Eigen,
        DarbouxMethod::Auto => DarbouxMethod::Groebner,
        DarbouxMethod::Eigen if !spec.is_affine() => {
            return Err(DVarietyError::Shape("the eigen path needs components of degree at most one".into()))
        }
        other => other,
    };
    let bounds: Vec<i64> = (1..=spec.m()).map(|k| spec.degree(k) - 1).collect();
    let (mut results, incomplete) = match method {
        DarbouxMethod::Eigen => darboux_eigen(spec, d)?,
        _ => darboux_groebner(spec, d, &bounds)?,
    };
    sort_results(&mut results);
    Ok(DarbouxReport {
        results,
        method,
        incomplete,
        cofactor_degree_bounds: bounds,
    })
}

/// Matrix of `δ_k` on the span of `monos` (square when `δ_k` preserves degree).
fn derivation_matrix(spec: &DSpec, k: usize, monos: &[Monomial]) -> ExactMatrix<Rational> {
    let n = monos.len();
    let index: BTreeMap<Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m.exps().to_vec(), i)).collect();
    let mut mat = ExactMatrix::zeros(n, n, Rational::zero());
    for (col, mono) in monos.iter().enumerate() {
        let image = spec.apply(k, &MultiPoly::monomial(TermOrder::GrevLex, mono.clone(), Rational::one()));
        for (m, c) in image.terms() {
            let row = index[&m.exps().to_vec()];
            mat.set(row, col, c.clone());
        }
    }
    mat
}

fn darboux_eigen(spec: &DSpec, d: u32) -> Result<(Vec<DarbouxResult>, bool), DVarietyError> {
    let monos = monomials_up_to(spec.n, d);
    let size = monos.len();
    let mats: Vec<ExactMatrix<Rational>> = (1..=spec.m()).map(|k| derivation_matrix(spec, k, &monos)).collect();
    let mut incomplete = false;
    let mut spectra: Vec<Vec<Rational>> = Vec::new();
    for m in &mats {
        let report = rational_eigen(m)?;
        incomplete |= report.non_rational_spectrum;
        spectra.push(report.pairs.into_iter().map(|(l, _)| l).collect());
    }
    let mut results = Vec::new();
    let mut tuple = vec![Rational::zero(); spec.m()];
    let mut combos: Vec<Vec<Rational>> = Vec::new();
    collect_tuples(&spectra, 0, &mut tuple, &mut combos);
    for lambdas in combos {
        let mut stacked: Option<ExactMatrix<Rational>> = None;
        for (k, m) in mats.iter().enumerate() {
            let mut shifted = m.clone();
            for i in 0..size {
                let v = shifted.get(i, i) - &lambdas[k];
                shifted.set(i, i, v);
            }
            stacked = Some(match stacked {
                None => shifted,
                Some(s) => s.vstack(&shifted),
            });
        }
        let kernel = stacked.expect("m >= 1").nullspace();
        let all_zero = lambdas.iter().all(|l| l.is_zero());
        let cofactors: Vec<MultiPoly> = lambdas
            .iter()
            .map(|l| MultiPoly::constant(spec.n, TermOrder::GrevLex, l.clone()))
            .collect();
        for f in canonical_polys(&monos, kernel, all_zero) {
            results.push(make_result(f, cofactors.clone()));
        }
    }
    Ok((results, incomplete))
}

fn collect_tuples(spectra: &[Vec<Rational>], k: usize, cur: &mut Vec<Rational>, out: &mut Vec<Vec<Rational>>) {
    if k == spectra.len() {
        out.push(cur.clone());
        return;
    }
    for l in &spectra[k] {
        cur[k] = l.clone();
        collect_tuples(spectra, k + 1, cur, out);
    }
}

/// Kernel of `f ↦ (δ_k f − K_k f)_k` on polynomials of degree `≤ d`, as a
/// canonical basis (modulo constants when every `K_k` is zero).
pub fn darboux_space(spec: &DSpec, d: u32, cofactors: &[MultiPoly]) -> Vec<MultiPoly> {
    let monos = monomials_up_to(spec.n, d);
    let mut rows: BTreeMap<(usize, Vec<u32>), Vec<Rational>> = BTreeMap::new();
    for (col, mono) in monos.iter().enumerate() {
        let mp = MultiPoly::monomial(TermOrder::GrevLex, mono.clone(), Rational::one());
        for k in 1..=spec.m() {
            let image = &spec.apply(k, &mp) - &(&cofactors[k - 1] * &mp);
            for (m, c) in image.terms() {
                let row = rows
                    .entry((k, m.exps().to_vec()))
                    .or_insert_with(|| vec![Rational::zero(); monos.len()]);
                row[col] = c.clone();
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..monos.len())
            .map(|i| (0..monos.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        ExactMatrix::from_rows(rows.into_values().collect(), Rational::zero()).nullspace()
    };
    let all_zero = cofactors.iter().all(|k| k.is_zero());
    canonical_polys(&monos, kernel, all_zero)
}

/// Budget on cofactor points per normalization branch.
const COFACTOR_POINT_BUDGET: usize = 64;

fn darboux_groebner(spec: &DSpec, d: u32, bounds: &[i64]) -> Result<(Vec<DarbouxResult>, bool), DVarietyError> {
    let n = spec.n;
    let fmonos = monomials_up_to(n, d);
    let kmonos: Vec<Vec<Monomial>> = bounds
        .iter()
        .map(|b| if *b < 0 { vec![] } else { monomials_up_to(n, *b as u32) })
        .collect();
    let na = fmonos.len();
    let nb: usize = kmonos.iter().map(|v| v.len()).sum();
    let nv = na + nb;
    let order = TermOrder::Elim(na);
    let var = |i: usize| MultiPoly::var(nv, order, i);

    // coefficient of each x-monomial in δ_k f − K_k f, as a polynomial in (a, b)
    let mut eqs: BTreeMap<(usize, Vec<u32>), MultiPoly> = BTreeMap::new();
    let mut push = |key: (usize, Vec<u32>), p: MultiPoly| {
        let e = eqs.entry(key).or_insert_with(|| MultiPoly::zero(nv, order));
        *e = &*e + &p;
    };
    let mut boff = na;
    for k in 1..=spec.m() {
        for (ai, mono) in fmonos.iter().enumerate() {
            let mp = MultiPoly::monomial(TermOrder::GrevLex, mono.clone(), Rational::one());
            for (m, c) in spec.apply(k, &mp).terms() {
                push((k, m.exps().to_vec()), var(ai).scale(c));
            }
            for (bi, kmono) in kmonos[k - 1].iter().enumerate() {
                let prod = mono.mul(kmono);
                let ab = &var(ai) * &var(boff + bi);
                push((k, prod.exps().to_vec()), -&ab);
            }
        }
        boff += kmonos[k - 1].len();
    }
    let system: Vec<MultiPoly> = eqs.into_values().filter(|p| !p.is_zero()).collect();

    let mut found: Vec<Vec<Rational>> = Vec::new();
    let mut incomplete = false;
    for (lead, mono) in fmonos.iter().enumerate() {
        if mono.is_one() {
            continue;
        }
        let mut gens = system.clone();
        gens.push(&var(lead) - &MultiPoly::one(nv, order));
        for higher in 0..lead {
            gens.push(var(higher));
        }
        let gb = buchberger(&gens, order)?;
        if gb.is_unit() {
            continue;
        }
        let points = if nb == 0 {
            vec![vec![]]
        } else {
            let elim = elimination_ideal(&gb, na);
            let ps = rational_points(&elim, nb, COFACTOR_POINT_BUDGET)?;
            incomplete |= !ps.complete;
            ps.points
        };
        for p in points {
            if !found.contains(&p) {
                found.push(p);
            }
        }
    }

    let mut results = Vec::new();
    for point in found {
        let mut cofactors = Vec::with_capacity(spec.m());
        let mut off = 0;
        for ks in &kmonos {
            let k = MultiPoly::from_terms(
                n,
                TermOrder::GrevLex,
                ks.iter().zip(&point[off..off + ks.len()]).map(|(m, c)| (m.clone(), c.clone())),
            );
            off += ks.len();
            cofactors.push(k);
        }
        for f in darboux_space(spec, d, &cofactors) {
            results.push(make_result(f, cofactors.clone()));
        }
    }
    Ok((results, incomplete))
}

/// Polynomial and rational first integrals up to degree `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FirstIntegrals {
    /// Canonical basis of nonconstant polynomial first integrals of degree `≤ d`.
    pub polynomial: Vec<MultiPoly>,
    /// Ratios of products of Darboux polynomials with equal cofactors.
    pub rational: Vec<RatFunc>,
    pub darboux: DarbouxReport,
}

/// Polynomial first integrals come from the kernel of all `δ_k` modulo
/// constants. Rational ones are `P/Q` where `P` and `Q` are products of
/// disjoint multisets of Darboux polynomials, each of degree `≤ d`, with
/// equal total cofactors; numerators have degree at least the denominator's.
pub fn first_integral_search(spec: &DSpec, d: u32, check_commuting: bool) -> Result<FirstIntegrals, DVarietyError> {
    let darboux = darboux_search(spec, d, DarbouxMethod::Auto, check_commuting)?;
    let zero: Vec<MultiPoly> = (0..spec.m()).map(|_| MultiPoly::zero(spec.n, TermOrder::GrevLex)).collect();
    let polynomial = darboux_space(spec, d, &zero);

    // multisets of Darboux polynomials with total degree ≤ d
    let items = &darboux.results;
    let mut products: Vec<(Vec<usize>, u32)> = Vec::new();
    fn rec(items: &[DarbouxResult], start: usize, d: u32, cur: &mut Vec<usize>, deg: u32, out: &mut Vec<(Vec<usize>, u32)>) {
        if !cur.is_empty() {
            out.push((cur.clone(), deg));
        }
        for i in start..items.len() {
            let nd = deg + items[i].degree;
            if nd <= d {
                cur.push(i);
                rec(items, i, d, cur, nd, out);
                cur.pop();
            }
        }
    }
    rec(items, 0, d, &mut Vec::new(), 0, &mut products);

    let cofactor_sum = |idx: &[usize]| -> Vec<MultiPoly> {
        let mut acc = zero.clone();
        for &i in idx {
            for (k, c) in items[i].cofactors.iter().enumerate() {
                acc[k] = &acc[k] + c;
            }
        }
        acc
    };
    let product = |idx: &[usize]| -> MultiPoly {
        idx.iter()
            .fold(MultiPoly::one(spec.n, TermOrder::GrevLex), |acc, &i| &acc * &items[i].f)
    };
    let sums: Vec<Vec<MultiPoly>> = products.iter().map(|(idx, _)| cofactor_sum(idx)).collect();
    let mut rational: Vec<RatFunc> = Vec::new();
    for (a, (na, da)) in products.iter().enumerate() {
        for (b, (nb, db)) in products.iter().enumerate() {
            if da < db || (da == db && a >= b) || sums[a] != sums[b] {
                continue;
            }
            if na.iter().any(|i| nb.contains(i)) {
                continue;
            }
            let q = RatFunc::new(product(na), product(nb))?;
            if q.is_constant() {
                continue;
            }
            let q = orient(q);
            if !rational.contains(&q) {
                rational.push(q);
            }
        }
    }
    rational.sort_by(|x, y| {
        let dx = x.num().total_degree().max(x.den().total_degree());
        let dy = y.num().total_degree().max(y.den().total_degree());
        dx.cmp(&dy)
            .then_with(|| cmp_poly(x.num(), y.num()))
            .then_with(|| cmp_poly(x.den(), y.den()))
    });
    Ok(FirstIntegrals {
        polynomial,
        rational,
        darboux,
    })
}

/// Puts the larger degree in the numerator and makes it monic.
fn orient(q: RatFunc) -> RatFunc {
    let dn = q.num().total_degree().unwrap_or(0);
    let dd = q.den().total_degree().unwrap_or(0);
    let q = if dn < dd { q.inv().expect("nonzero") } else { q };
    let lc = q.num().leading_coeff().expect("nonzero").clone();
    q.scale(&lc.recip())
}

/// `a'/a` for `a ∈ Q(t)` with `d/dt`, and whether it is a constant.
pub fn log_derivative(a: &RatFunc) -> Result<(RatFunc, bool), DVarietyError> {
    if a.is_zero() {
        return Err(DVarietyError::ZeroInput);
    }
    if a.nvars() != 1 {
        return Err(DVarietyError::Shape("expected a rational function of t".into()));
    }
    let ld = a.derivative(0).checked_div(a)?;
    let c = ld.is_constant();
    Ok((ld, c))
}

/// Whether `x' = γ x` has a nonzero solution in `Q(t)` for constant `γ`.
/// Logarithmic derivatives of rational functions vanish at infinity, so
/// this holds exactly for `γ = 0`.
pub fn exponential_has_rational_solution(gamma: &Rational) -> bool {
    gamma.is_zero()
}
