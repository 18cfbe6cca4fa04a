//! Heights on rational function fields and rational solutions of first
//! order equations `P(x, x') = 0` over `Q(t)`.

use std::collections::BTreeMap;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{gcd, AlgebraError, Monomial, MultiPoly, RatFunc, Rational, TermOrder};
use crate::groebner::{buchberger, ideal_dimension, rational_points, GroebnerBasis};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error("the equation is the zero polynomial")]
    ZeroEquation,
    #[error("denominators may only involve the t variables")]
    DenominatorInUnknowns,
    #[error("need at least one t variable")]
    NoParameters,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `h(p/q) = max(deg p, deg q)` for `p/q` in lowest terms; with several
/// variables the total degree is used.
pub fn height_ratfunc(g: &RatFunc) -> u32 {
    if g.is_zero() {
        return 0;
    }
    g.num().total_degree().unwrap_or(0).max(g.den().total_degree().unwrap_or(0))
}

/// `P(x, ∂_1x, …, ∂_sx) = 0` with coefficients in `Q(t_1..t_s)`.
///
/// Stored as a polynomial in the variables `(x, y_1..y_s, t_1..t_s)` with
/// denominators cleared, the content in `t` removed and a monic leading
/// coefficient. The usual case is `s = 1`, `P(x, x') = 0` over `Q(t)`;
/// larger `s` is experimental.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OdePoly {
    s: usize,
    p: MultiPoly,
}

impl OdePoly {
    /// From a polynomial in `(x, y_1..y_s, t_1..t_s)`.
    pub fn new(p: &MultiPoly, s: usize) -> Result<Self, HeightError> {
        if s == 0 {
            return Err(HeightError::NoParameters);
        }
        if p.is_zero() {
            return Err(HeightError::ZeroEquation);
        }
        assert_eq!(p.nvars(), 1 + 2 * s, "expected variables (x, y.., t..)");
        let p = p.with_order(TermOrder::GrevLex);
        // content: gcd of the t-coefficients of the (x, y)-monomials
        let mut groups: BTreeMap<Vec<u32>, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let key = m.exps()[..=s].to_vec();
            let mut t_exps = vec![0; 1 + s];
            t_exps.extend_from_slice(&m.exps()[1 + s..]);
            groups.entry(key).or_default().push((Monomial::new(t_exps), c.clone()));
        }
        let mut content = MultiPoly::zero(p.nvars(), TermOrder::GrevLex);
        for terms in groups.into_values() {
            content = gcd(&content, &MultiPoly::from_terms(p.nvars(), TermOrder::GrevLex, terms));
        }
        let p = p.exact_div(&content)?.monic();
        Ok(OdePoly { s, p })
    }

    /// From a rational function in `(x, y_1..y_s, t_1..t_s)` whose
    /// denominator involves only the `t` variables.
    pub fn from_ratfunc(f: &RatFunc, s: usize) -> Result<Self, HeightError> {
        if (0..=s).any(|v| f.den().involves(v)) {
            return Err(HeightError::DenominatorInUnknowns);
        }
        Self::new(f.num(), s)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.p
    }

    pub fn is_experimental(&self) -> bool {
        self.s > 1
    }

    /// `x, y, t` when `s = 1`, else `x, y1.., t1..`.
    pub fn var_names(&self) -> Vec<String> {
        if self.s == 1 {
            return vec!["x".into(), "y".into(), "t".into()];
        }
        let mut names = vec!["x".to_string()];
        names.extend((1..=self.s).map(|k| format!("y{k}")));
        names.extend((1..=self.s).map(|k| format!("t{k}")));
        names
    }

    pub fn render(&self) -> String {
        self.p.render(&self.var_names())
    }

    /// `P(g, ∂_1g, …, ∂_sg)` as a rational function of `t`.
    pub fn evaluate(&self, g: &RatFunc) -> RatFunc {
        let s = self.s;
        let nt = g.nvars();
        let derivs: Vec<RatFunc> = (0..s).map(|k| g.derivative(k)).collect();
        let mut acc = RatFunc::zero(nt);
        let mut cache: BTreeMap<(usize, u32), RatFunc> = BTreeMap::new();
        let mut power = |idx: usize, e: u32, base: &RatFunc| -> RatFunc {
            cache.entry((idx, e)).or_insert_with(|| base.pow(e)).clone()
        };
        for (m, c) in self.p.terms() {
            let exps = m.exps();
            let t_mono = Monomial::new(exps[1 + s..].iter().copied());
            let mut term = RatFunc::from_poly(MultiPoly::monomial(TermOrder::GrevLex, t_mono, c.clone()));
            if exps[0] > 0 {
                term = &term * &power(0, exps[0], g);
            }
            for k in 0..s {
                if exps[1 + k] > 0 {
                    term = &term * &power(1 + k, exps[1 + k], &derivs[k]);
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}

/// Substitutes `x = g`, `y_k = ∂g/∂t_k` and tests for exact zero.
pub fn verify_ode_solution(p: &OdePoly, g: &RatFunc) -> bool {
    g.nvars() == p.s && p.evaluate(g).is_zero()
}

/// A verified rational solution with its height.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionSample {
    pub solution: RatFunc,
    pub height: u32,
}

/// Solutions `x = p/q` whose denominator `q` has a fixed leading monomial.
#[derive(Clone, PartialEq, Debug)]
pub struct SolutionFamily {
    /// Leading monomial of `q` (for one `t`, `t^deg q`).
    pub denominator_lead: Monomial,
    /// Names of the ansatz coefficients, `q` coefficients first.
    pub unknowns: Vec<String>,
    /// Reduced grevlex basis of the coefficient ideal.
    pub basis: GroebnerBasis,
    /// Dimension of the coefficient variety.
    pub dimension: i64,
    /// Every rational point is listed (nothing sampled, no budget cut).
    pub complete: bool,
    pub samples: Vec<SolutionSample>,
}

/// Outcome of a bounded-degree rational solution search.
#[derive(Clone, PartialEq, Debug)]
pub struct HeightReport {
    pub degree: u32,
    pub families: Vec<SolutionFamily>,
    /// Distinct verified solutions over all families, by height then text.
    pub solutions: Vec<SolutionSample>,
    /// Largest height among verified solutions.
    pub n_obs: Option<u32>,
    /// Candidate points rejected by re-verification (always expected 0).
    pub rejected: usize,
    /// More than one `t` variable.
    pub experimental: bool,
}

/// Points tried per family.
const SAMPLE_BUDGET: usize = 48;

/// Monomials in `s` variables of degree `≤ d`, highest first under grevlex.
fn t_monomials(s: usize, d: u32) -> Vec<Monomial> {
    crate::dvariety::monomials_up_to(s, d)
}

/// Searches `x = p/q` with `p`, `q` of degree `≤ D`, `q` monic.
///
/// For each choice of the leading monomial of `q` the equation with
/// cleared denominators gives polynomial identities in `t` whose
/// coefficients are polynomials in the ansatz coefficients. Each system is
/// solved with Gröbner bases; finite solution sets are enumerated and
/// positive-dimensional ones are sampled at small parameter values. Every
/// candidate is re-verified by substitution before it is reported.
pub fn rational_solution_search(p: &OdePoly, d: u32) -> Result<HeightReport, HeightError> {
    let s = p.s;
    let tmonos = t_monomials(s, d);
    let mut families = Vec::new();
    let mut rejected = 0;
    let mut seen: BTreeMap<String, SolutionSample> = BTreeMap::new();
    for (lead_pos, lead) in tmonos.iter().enumerate().rev() {
        let q_free: Vec<Monomial> = tmonos[lead_pos + 1..].to_vec();
        let family = solve_branch(p, lead, &q_free, &tmonos)?;
        let Some((mut family, candidates)) = family else { continue };
        for g in candidates {
            if verify_ode_solution(p, &g) {
                let sample = SolutionSample {
                    height: height_ratfunc(&g),
                    solution: g,
                };
                seen.entry(render_t(&sample.solution, s)).or_insert_with(|| sample.clone());
                if !family.samples.contains(&sample) {
                    family.samples.push(sample);
                }
            } else {
                rejected += 1;
            }
        }
        families.push(family);
    }
    let mut solutions: Vec<SolutionSample> = seen.into_values().collect();
    solutions.sort_by(|a, b| {
        a.height
            .cmp(&b.height)
            .then_with(|| render_t(&a.solution, s).cmp(&render_t(&b.solution, s)))
    });
    let n_obs = solutions.iter().map(|x| x.height).max();
    Ok(HeightReport {
        degree: d,
        families,
        solutions,
        n_obs,
        rejected,
        experimental: p.is_experimental(),
    })
}

pub fn t_names(s: usize) -> Vec<String> {
    if s == 1 {
        vec!["t".into()]
    } else {
        (1..=s).map(|k| format!("t{k}")).collect()
    }
}

fn render_t(g: &RatFunc, s: usize) -> String {
    g.render(&t_names(s))
}

type Branch = Option<(SolutionFamily, Vec<RatFunc>)>;

fn solve_branch(p: &OdePoly, lead: &Monomial, q_free: &[Monomial], tmonos: &[Monomial]) -> Result<Branch, HeightError> {
    let s = p.s;
    let nb = q_free.len();
    let na = tmonos.len();
    let nu = nb + na;
    // signature: unknowns (q coefficients, then p coefficients), then t
    let nv = nu + s;
    let order = TermOrder::GrevLex;
    let t_mono = |m: &Monomial| {
        let mut exps = vec![0u32; nu];
        exps.extend_from_slice(m.exps());
        Monomial::new(exps)
    };
    let mut q = MultiPoly::monomial(order, t_mono(lead), Rational::one());
    for (i, m) in q_free.iter().enumerate() {
        q = &q + &MultiPoly::var(nv, order, i).mul_term(&t_mono(m), &Rational::one());
    }
    let mut num = MultiPoly::zero(nv, order);
    for (i, m) in tmonos.iter().enumerate() {
        num = &num + &MultiPoly::var(nv, order, nb + i).mul_term(&t_mono(m), &Rational::one());
    }
    // x = num/q, y_k = (num_k q - num q_k)/q^2
    let ys: Vec<MultiPoly> = (0..s)
        .map(|k| &(&num.derivative(nu + k) * &q) - &(&num * &q.derivative(nu + k)))
        .collect();
    let weight = |m: &Monomial| m.exps()[0] + 2 * m.exps()[1..=s].iter().sum::<u32>();
    let top = p.p.terms().iter().map(|(m, _)| weight(m)).max().unwrap_or(0);
    let mut cleared = MultiPoly::zero(nv, order);
    for (m, c) in p.p.terms() {
        let exps = m.exps();
        let mut term = MultiPoly::monomial(order, t_mono(&Monomial::new(exps[1 + s..].iter().copied())), c.clone());
        term = &term * &num.pow(exps[0]);
        for k in 0..s {
            term = &term * &ys[k].pow(exps[1 + k]);
        }
        term = &term * &q.pow(top - weight(m));
        cleared = &cleared + &term;
    }
    // coefficients of the t-monomials
    let mut eqs: BTreeMap<Vec<u32>, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for (m, c) in cleared.terms() {
        let key = m.exps()[nu..].to_vec();
        eqs.entry(key)
            .or_default()
            .push((Monomial::new(m.exps()[..nu].iter().copied()), c.clone()));
    }
    let system: Vec<MultiPoly> = eqs
        .into_values()
        .map(|terms| MultiPoly::from_terms(nu, order, terms))
        .filter(|e| !e.is_zero())
        .collect();

    let tn = t_names(s);
    let mut unknowns: Vec<String> = q_free.iter().map(|m| format!("q[{}]", m.render(&tn))).collect();
    unknowns.extend(tmonos.iter().map(|m| format!("p[{}]", m.render(&tn))));
    let basis = if system.is_empty() {
        GroebnerBasis::zero_ideal(nu, order)
    } else {
        buchberger(&system, order)?
    };
    if basis.is_unit() {
        return Ok(None);
    }
    let dimension = ideal_dimension(&basis);
    let points = rational_points(basis.gens(), nu, SAMPLE_BUDGET)?;

    let mut candidates = Vec::new();
    let q_lead = MultiPoly::monomial(order, lead.clone(), Rational::one());
    for point in &points.points {
        let mut qv = q_lead.clone();
        for (i, m) in q_free.iter().enumerate() {
            qv = &qv + &MultiPoly::monomial(order, m.clone(), point[i].clone());
        }
        let mut pv = MultiPoly::zero(s, order);
        for (i, m) in tmonos.iter().enumerate() {
            pv = &pv + &MultiPoly::monomial(order, m.clone(), point[nb + i].clone());
        }
        candidates.push(RatFunc::new(pv, qv)?);
    }
    Ok(Some((
        SolutionFamily {
            denominator_lead: lead.clone(),
            unknowns,
            basis,
            dimension,
            complete: points.complete,
            samples: Vec::new(),
        },
        candidates,
    )))
}

/// Outcome of checking the height axioms on samples.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeightAxiomsReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl HeightAxiomsReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks on the samples: `h(1/g) = h(g)` for `g ≠ 0`, `h(g^n) = n·h(g)`,
/// `h(g) = 0` exactly for constants, and for consecutive pairs
/// `h(fg) ≤ h(f) + h(g)` and `h(f + g) ≤ h(f) + h(g)`.
pub fn height_axioms_check(samples: &[RatFunc], n: u32) -> HeightAxiomsReport {
    let mut report = HeightAxiomsReport::default();
    let names = |g: &RatFunc| g.render(&t_names(g.nvars().max(1)));
    for g in samples {
        let h = height_ratfunc(g);
        report.checked += 1;
        if (h == 0) != g.is_constant() {
            report.failures.push(format!("h({}) = {h} but constancy is {}", names(g), g.is_constant()));
        }
        if !g.is_zero() {
            let hi = height_ratfunc(&g.inv().expect("nonzero"));
            if hi != h {
                report.failures.push(format!("h(1/g) = {hi} != h(g) = {h} for g = {}", names(g)));
            }
        }
        let hp = height_ratfunc(&g.pow(n));
        if !g.is_zero() && hp != n * h {
            report.failures.push(format!("h(g^{n}) = {hp} != {} for g = {}", n * h, names(g)));
        }
    }
    for pair in samples.windows(2) {
        let (f, g) = (&pair[0], &pair[1]);
        let bound = height_ratfunc(f) + height_ratfunc(g);
        let hm = height_ratfunc(&(f * g));
        let hs = height_ratfunc(&(f + g));
        if hm > bound {
            report.failures.push(format!("h(fg) = {hm} > {bound} for f = {}, g = {}", names(f), names(g)));
        }
        if hs > bound {
            report.failures.push(format!("h(f+g) = {hs} > {bound} for f = {}, g = {}", names(f), names(g)));
        }
        report.checked += 1;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn t() -> RatFunc {
        RatFunc::var(1, 0)
    }

    fn c(v: i64) -> RatFunc {
        RatFunc::constant(1, rat(v, 1))
    }

    /// `P` from integer terms `(coeff, x exp, y exp, t exp)`.
    fn ode(terms: &[(i64, u32, u32, u32)]) -> OdePoly {
        let p = MultiPoly::from_terms(
            3,
            TermOrder::GrevLex,
            terms.iter().map(|(k, a, b, e)| (Monomial::new([*a, *b, *e]), rat(*k, 1))),
        );
        OdePoly::new(&p, 1).unwrap()
    }

    #[test]
    fn heights() {
        let g = (&(&t() * &t()) + &c(1)).checked_div(&(&t() - &c(1))).unwrap();
        assert_eq!(height_ratfunc(&g), 2);
        assert_eq!(height_ratfunc(&c(5)), 0);
        assert_eq!(height_ratfunc(&c(1).checked_div(&(&t() - &c(3))).unwrap()), 1);
    }

    #[test]
    fn verification() {
        let riccati = ode(&[(1, 0, 1, 0), (1, 2, 0, 0)]);
        let g = c(1).checked_div(&(&t() - &c(3))).unwrap();
        assert!(verify_ode_solution(&riccati, &g));
        assert!(verify_ode_solution(&riccati, &RatFunc::zero(1)));
        let growth = ode(&[(1, 0, 1, 0), (-1, 1, 0, 0)]);
        assert!(!verify_ode_solution(&growth, &t()));
    }

    #[test]
    fn content_is_removed() {
        let p = ode(&[(2, 0, 1, 1), (2, 2, 0, 1)]);
        assert_eq!(p, ode(&[(1, 0, 1, 0), (1, 2, 0, 0)]));
    }

    #[test]
    fn riccati_search() {
        let riccati = ode(&[(1, 0, 1, 0), (1, 2, 0, 0)]);
        for d in 1..=2 {
            let r = rational_solution_search(&riccati, d).unwrap();
            assert_eq!(r.n_obs, Some(1), "D={d}");
            assert_eq!(r.rejected, 0);
            assert!(r.solutions.iter().any(|s| s.solution.is_zero()));
            assert!(r.solutions.iter().any(|s| s.solution == c(1).checked_div(&t()).unwrap()));
            assert!(r.families.iter().any(|f| f.dimension >= 1));
        }
    }

    #[test]
    fn exponential_and_integration() {
        let growth = ode(&[(1, 0, 1, 0), (-1, 1, 0, 0)]);
        let r = rational_solution_search(&growth, 3).unwrap();
        let sols: Vec<RatFunc> = r.solutions.iter().map(|s| s.solution.clone()).collect();
        assert_eq!(sols, vec![RatFunc::zero(1)]);
        assert_eq!(r.n_obs, Some(0));

        let integrate = ode(&[(1, 0, 1, 0), (-1, 0, 0, 0)]);
        let r = rational_solution_search(&integrate, 2).unwrap();
        assert_eq!(r.n_obs, Some(1));
        assert!(r.solutions.iter().all(|s| s.height == 1));
        assert!(r.solutions.contains(&SolutionSample { solution: t(), height: 1 }));
    }

    #[test]
    fn axioms() {
        let g = (&t() - &c(1)).checked_div(&(&t() + &c(1))).unwrap();
        assert_eq!(height_ratfunc(&g.pow(3)), 3);
        assert_eq!(height_ratfunc(&t().pow(2).inv().unwrap()), 2);
        assert_eq!(height_ratfunc(&(&t() + &(-&t()))), 0);
        let r = height_axioms_check(&[g, t(), -&t(), t().pow(2), c(4)], 3);
        assert!(r.holds(), "{:?}", r.failures);
    }
}
