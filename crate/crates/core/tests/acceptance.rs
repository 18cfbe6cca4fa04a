//! Acceptance criteria 1–10, run in order with their time limits.
//!
//! Prints one `PASS`/`FAIL` line per criterion and exits nonzero if any
//! criterion fails. The random criteria use `DELTA_KERNEL_SEED` when set.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::{corpus, maximal_points_by_scan, random_autoreduced, random_diff_poly, random_ratfunc_t, random_ring};
use delta_kernel::algebra::{rat, MultiPoly, RatFunc, Rational, TermOrder};
use delta_kernel::cli::{parse_diff_poly, print_diff_poly, resolve_seed, run_cli, REPORT_SCHEMA};
use delta_kernel::diff_ring::{is_reduced_wrt, poly_rank_compare, ritt_reduce};
use delta_kernel::dvariety::{darboux_search, first_integral_search, DSpec, DarbouxMethod};
use delta_kernel::exterior::{lemma_a2_check, random_a2_instance, A2Verdict, ExtVector};
use delta_kernel::heights::{height_ratfunc, rational_solution_search, OdePoly};
use delta_kernel::initial_sets::{prolongation_bound, ExpPoint, InitialSetRep};
use delta_kernel::prolongation::truncated_prolongation;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn differential_ring_laws(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..1000 {
        let ring = random_ring(&mut rng);
        let f = random_diff_poly(&mut rng, &ring, 3, 3, 4);
        let g = random_diff_poly(&mut rng, &ring, 3, 3, 2);
        for a in 1..=ring.m() {
            let da = f.apply_derivation(a).map_err(|e| e.to_string())?;
            for b in 1..=ring.m() {
                let ab = da.apply_derivation(b).unwrap();
                let ba = f.apply_derivation(b).unwrap().apply_derivation(a).unwrap();
                ensure!(ab == ba, "sample {i}: d{a}d{b} != d{b}d{a} on {}", print_diff_poly(&f));
            }
            let lhs = (&f * &g).apply_derivation(a).unwrap();
            let rhs = &(&da * &g) + &(&f * &g.apply_derivation(a).unwrap());
            ensure!(lhs == rhs, "sample {i}: Leibniz fails for d{a}");
        }
        if f.rank().is_some() {
            let s = f.separant().unwrap();
            ensure!(poly_rank_compare(&s, &f).is_lt(), "sample {i}: separant does not rank below f");
        }
    }
    Ok("1000 samples".into())
}

fn ritt_certificates(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nontrivial = 0;
    for i in 0..200 {
        let ring = random_ring(&mut rng);
        let set = random_autoreduced(&mut rng, &ring, 2);
        let g = random_diff_poly(&mut rng, &ring, 3, 2, 3);
        let (rem, cert) = ritt_reduce(&g, &set).map_err(|e| e.to_string())?;
        ensure!(cert.verify(&g, &set).unwrap(), "pair {i}: certificate does not re-expand");
        ensure!(is_reduced_wrt(&rem, &set), "pair {i}: remainder not reduced");
        nontrivial += !cert.is_trivial() as usize;
    }
    Ok(format!("200 pairs, {nontrivial} with nontrivial certificates"))
}

fn basis_fact_oracle() -> Outcome {
    let mut checked = 0;
    for (name, set, l, _) in corpus() {
        let rep = InitialSetRep::from_leaders(&set);
        for t in 0..=l + 2 {
            let sat = truncated_prolongation(&set, t).and_then(|p| p.saturate()).map_err(|e| e.to_string())?;
            ensure!(
                sat.dimension == rep.count_bt(t) as i64,
                "{name}, t = {t}: dimension {} vs |B_t| = {}",
                sat.dimension,
                rep.count_bt(t)
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} (entry, t) pairs"))
}

fn prolongation_bounds() -> Outcome {
    let mut got = Vec::new();
    for (name, set, l, removable) in corpus() {
        let b = prolongation_bound(&set);
        let pts: Vec<Vec<u32>> = b.removable.iter().map(|p| p.to_vec()).collect();
        ensure!(b.l == l && pts == removable, "{name}: l = {}, removable {pts:?}", b.l);
        got.push(b.l.to_string());
    }
    Ok(format!("l = {}", got.join(", ")))
}

fn removable_brute_force(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0;
    for i in 0..100 {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=2);
        let e: Vec<ExpPoint> = (0..rng.gen_range(0..=5))
            .map(|_| ExpPoint::new((0..m).map(|_| rng.gen_range(0..=4)).collect(), rng.gen_range(1..=n)))
            .collect();
        let boxed = InitialSetRep::new(m, n, e.clone()).removable_points();
        let scanned = maximal_points_by_scan(m, n, &e, 4 * m as u32 + 1);
        ensure!(boxed == scanned, "set {i}: box {boxed:?} vs scan {scanned:?}");
        total += boxed.len();
    }
    Ok(format!("100 sets, {total} removable points"))
}

fn planar(f: MultiPoly, g: MultiPoly) -> DSpec {
    DSpec::new(2, vec![vec![f, g]], vec![]).unwrap()
}

fn darboux_engine() -> Outcome {
    let x = MultiPoly::var(2, TermOrder::GrevLex, 0);
    let y = MultiPoly::var(2, TermOrder::GrevLex, 1);
    let one = MultiPoly::constant(2, TermOrder::GrevLex, rat(1, 1));
    let limit = Duration::from_secs(60);

    let rotation = planar(-&y, x.clone());
    let start = Instant::now();
    let r = darboux_search(&rotation, 2, DarbouxMethod::Auto, true).map_err(|e| e.to_string())?;
    ensure!(
        r.results.len() == 1 && r.results[0].f == &(&x * &x) + &(&y * &y) && r.results[0].cofactors[0].is_zero(),
        "rotation: unexpected results"
    );
    ensure!(start.elapsed() < limit, "rotation run took {:?}", start.elapsed());

    let shift = planar(one.clone(), y.clone());
    for d in 1..=4u32 {
        let start = Instant::now();
        let r = darboux_search(&shift, d, DarbouxMethod::Auto, true).map_err(|e| e.to_string())?;
        let fs: Vec<MultiPoly> = r.results.iter().map(|x| x.f.clone()).collect();
        ensure!(fs == (1..=d).map(|e| y.pow(e)).collect::<Vec<_>>(), "(1, y) at d = {d}: {} results", fs.len());
        ensure!(start.elapsed() < limit, "(1, y) run took {:?}", start.elapsed());
    }
    for d in 1..=3u32 {
        let fi = first_integral_search(&shift, d, true).map_err(|e| e.to_string())?;
        ensure!(fi.rational.is_empty(), "(1, y) has a rational first integral at d = {d}");
    }

    let scaling = planar(x.clone(), y.scale(&rat(2, 1)));
    let start = Instant::now();
    let fi = first_integral_search(&scaling, 2, true).map_err(|e| e.to_string())?;
    ensure!(fi.rational.contains(&RatFunc::new(&x * &x, y.clone()).unwrap()), "(x, 2y): x^2/y missing");
    ensure!(start.elapsed() < limit, "(x, 2y) run took {:?}", start.elapsed());

    let mut compared = 0;
    let mut specs = vec![rotation, shift, scaling];
    for (a, b, c, d) in [(1, 1, 0, 1), (0, 1, -1, 0), (2, 0, 1, 1), (1, -1, 1, 1), (1, 2, 3, 2), (-1, 0, 0, -1)] {
        specs.push(planar(&x.scale(&rat(a, 1)) + &y.scale(&rat(b, 1)), &x.scale(&rat(c, 1)) + &y.scale(&rat(d, 1))));
    }
    for spec in &specs {
        for d in 1..=3 {
            let e = darboux_search(spec, d, DarbouxMethod::Eigen, true).map_err(|e| e.to_string())?;
            let start = Instant::now();
            let g = darboux_search(spec, d, DarbouxMethod::Groebner, true).map_err(|e| e.to_string())?;
            ensure!(start.elapsed() < limit, "groebner run took {:?}", start.elapsed());
            if !e.incomplete && !g.incomplete {
                ensure!(e.results == g.results, "eigen and groebner paths disagree at d = {d}");
                compared += 1;
            }
        }
    }
    Ok(format!("named fields as expected; paths agree on {compared} complete runs"))
}

fn random_form(rng: &mut ChaCha8Rng, dim: usize, grade: usize) -> ExtVector<Rational> {
    let mut v = ExtVector::zero(dim, grade, &rat(0, 1)).unwrap();
    for _ in 0..rng.gen_range(0..=4) {
        let mut idx: Vec<usize> = (1..=dim).collect();
        for i in (1..idx.len()).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        idx.truncate(grade);
        v = v.add(&ExtVector::basis(dim, &idx, rat(rng.gen_range(-3..=3), 1)).unwrap()).unwrap();
    }
    v
}

fn appendix_lemmas(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verdicts: BTreeMap<&str, usize> = BTreeMap::new();
    for i in 0..500 {
        let inst = random_a2_instance(&mut rng, 6);
        let v = lemma_a2_check(&inst.alphas, &inst.omega, &inst.beta);
        ensure!(v != A2Verdict::Violated, "instance {i} violates the implication");
        *verdicts.entry(v.label()).or_default() += 1;
    }
    ensure!(verdicts.get("confirmed").copied().unwrap_or(0) > 0, "no instance satisfied the hypotheses");
    for i in 0..1000 {
        let dim = rng.gen_range(1..=6);
        let p = rng.gen_range(0..=dim);
        let q = rng.gen_range(0..=dim - p);
        let (a, b, c) = (random_form(&mut rng, dim, p), random_form(&mut rng, dim, p), random_form(&mut rng, dim, q));
        let v = random_form(&mut rng, dim, 1);
        let lam = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let lhs = a.add(&b).unwrap().wedge(&c).unwrap();
        ensure!(lhs == a.wedge(&c).unwrap().add(&b.wedge(&c).unwrap()).unwrap(), "axiom sample {i}: additivity");
        ensure!(a.scale(&lam).wedge(&c).unwrap() == a.wedge(&c).unwrap().scale(&lam), "axiom sample {i}: homogeneity");
        ensure!(v.wedge(&v).unwrap().is_zero(), "axiom sample {i}: alternation");
        let (ac, ca) = (a.wedge(&c).unwrap(), c.wedge(&a).unwrap());
        let sign_ok = if (p * q) % 2 == 0 { ac == ca } else { ac == ca.neg() };
        ensure!(sign_ok, "axiom sample {i}: graded commutation");
    }
    let summary: Vec<String> = verdicts.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Ok(format!("500 instances ({}), 1000 axiom samples", summary.join(", ")))
}

fn ode(terms: &[(i64, [u32; 3])]) -> OdePoly {
    let p = terms.iter().fold(MultiPoly::zero(3, TermOrder::GrevLex), |acc, (c, e)| {
        let mono = (0..3).fold(MultiPoly::constant(3, TermOrder::GrevLex, rat(*c, 1)), |m, v| {
            &m * &MultiPoly::var(3, TermOrder::GrevLex, v).pow(e[v])
        });
        &acc + &mono
    });
    OdePoly::new(&p, 1).unwrap()
}

/// `P(g, g', t) = 0` at many rational points, with `g'` from the quotient rule.
fn vanishes_pointwise(p: &OdePoly, g: &RatFunc) -> bool {
    let (num, den) = (g.num(), g.den());
    let (dn, dd) = (num.derivative(0), den.derivative(0));
    let zero = rat(0, 1);
    let mut checked = 0;
    for k in 0..80 {
        let t0 = rat(k - 40, 3);
        let pt = [t0.clone()];
        let q = den.eval(&pt);
        if q == zero {
            continue;
        }
        let x0 = num.eval(&pt) / &q;
        let y0 = (dn.eval(&pt) * &q - num.eval(&pt) * dd.eval(&pt)) / (&q * &q);
        if p.poly().eval(&[x0, y0, t0]) != zero {
            return false;
        }
        checked += 1;
    }
    checked >= 40
}

fn desk_scale_heights() -> Outcome {
    let limit = Duration::from_secs(120);
    let riccati = ode(&[(1, [0, 1, 0]), (1, [2, 0, 0])]);
    let mut notes = Vec::new();
    for d in 1..=3 {
        let start = Instant::now();
        let r = rational_solution_search(&riccati, d).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure!(r.n_obs == Some(1), "y + x^2 at D = {d}: N_obs = {:?}", r.n_obs);
        ensure!(r.rejected == 0, "y + x^2 at D = {d}: {} rejected candidates", r.rejected);
        for s in &r.solutions {
            ensure!(vanishes_pointwise(&riccati, &s.solution), "y + x^2 at D = {d}: a sample does not verify");
        }
        ensure!(elapsed < limit, "y + x^2 at D = {d} took {elapsed:?}");
        notes.push(format!("D={d} {:.1}s", elapsed.as_secs_f64()));
    }
    let linear = ode(&[(1, [0, 1, 0]), (-1, [1, 0, 0])]);
    for d in 1..=3 {
        let start = Instant::now();
        let r = rational_solution_search(&linear, d).map_err(|e| e.to_string())?;
        let sols: Vec<&RatFunc> = r.solutions.iter().map(|s| &s.solution).collect();
        ensure!(sols == vec![&RatFunc::zero(1)], "y - x at D = {d}: {} solutions", sols.len());
        ensure!(start.elapsed() < limit, "y - x at D = {d} took {:?}", start.elapsed());
    }
    Ok(format!("N_obs = 1 ({}); y - x gives only x = 0", notes.join(", ")))
}

fn height_axioms(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..500 {
        let f = random_ratfunc_t(&mut rng, 6);
        let g = random_ratfunc_t(&mut rng, 6);
        let (hf, hg) = (height_ratfunc(&f), height_ratfunc(&g));
        let n = rng.gen_range(1..=4);
        ensure!(height_ratfunc(&f.pow(n)) == n * hf, "sample {i}: h(g^{n}) != {n} h(g)");
        if !f.is_zero() {
            ensure!(height_ratfunc(&f.inv().unwrap()) == hf, "sample {i}: h(1/g) != h(g)");
        }
        ensure!(height_ratfunc(&(&f * &g)) <= hf + hg, "sample {i}: product not subadditive");
        ensure!(height_ratfunc(&(&f + &g)) <= hf + hg, "sample {i}: sum not subadditive");
    }
    Ok("500 samples".into())
}

fn cli_round_trip(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..500 {
        let ring = random_ring(&mut rng);
        let f = random_diff_poly(&mut rng, &ring, 3, 3, 4);
        let text = print_diff_poly(&f);
        let back = parse_diff_poly(&text, &ring).map_err(|e| format!("expression {i} `{text}`: {e}"))?;
        ensure!(back == f, "expression {i}: `{text}` does not round-trip");
    }
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).map_err(|e| e.to_string())?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/problems/");
    let seed_s = seed.to_string();
    let commands: Vec<Vec<String>> = [
        vec!["run".to_string(), format!("{dir}corpus_m1.dk")],
        vec!["run".to_string(), format!("{dir}corpus_m2.dk")],
        vec!["run".to_string(), format!("{dir}vector_fields.dk")],
        vec!["run".to_string(), format!("{dir}odes.dk")],
        vec!["run".to_string(), format!("{dir}reduce.dk")],
        vec!["height".to_string(), "(t^2+1)/(t-1)".to_string()],
        vec!["wedge-check".to_string(), "--seed".to_string(), seed_s.clone(), "--instances".to_string(), "100".to_string()],
    ]
    .into_iter()
    .collect();
    let mut stdin = || Err(std::io::Error::other("no stdin"));
    for cmd in &commands {
        let mut args = cmd.clone();
        args.insert(1, "--json".into());
        let first = run_cli(args.clone(), &mut stdin);
        ensure!(first.code == 0, "{cmd:?} failed: {}", first.stderr);
        let doc: Value = serde_json::from_str(&first.stdout).map_err(|e| e.to_string())?;
        ensure!(validator.is_valid(&doc), "{cmd:?}: report does not validate");
        let second = run_cli(args, &mut stdin);
        ensure!(first.stdout == second.stdout, "{cmd:?}: output differs between runs");
    }
    Ok(format!("500 expressions, {} reports", commands.len()))
}

fn main() {
    let seed = resolve_seed(None).expect("valid DELTA_KERNEL_SEED");
    println!("acceptance suite, seed {seed}");
    type Criterion = (u32, u64, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        (1, 60, Box::new(move || differential_ring_laws(seed))),
        (2, 120, Box::new(move || ritt_certificates(seed))),
        (3, 300, Box::new(basis_fact_oracle)),
        (4, 10, Box::new(prolongation_bounds)),
        (5, 60, Box::new(move || removable_brute_force(seed))),
        (6, 60 * 30, Box::new(darboux_engine)),
        (7, 60, Box::new(move || appendix_lemmas(seed))),
        (8, 120 * 6, Box::new(desk_scale_heights)),
        (9, 30, Box::new(move || height_axioms(seed))),
        (10, 60, Box::new(move || cli_round_trip(seed))),
    ];
    let mut failed = 0;
    for (n, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(msg) if secs > limit as f64 => Err(format!("{msg}, but took {secs:.1}s (limit {limit}s)")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {n:>2}: PASS ({secs:.2}s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL ({secs:.2}s) {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
