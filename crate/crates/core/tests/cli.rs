//! Problem-file parsing, command reports, JSON schema and exit codes.

mod common;

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::{random_diff_poly, random_ring};
use delta_kernel::cli::{parse_diff_poly, parse_problem, print_diff_poly, print_dspec, run_cli, Outcome, REPORT_SCHEMA};

fn problem(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("problems");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Outcome {
    run_cli(args.iter().copied(), &mut || Err(std::io::Error::other("no stdin")))
}

fn run_stdin(args: &[&str], input: &str) -> Outcome {
    let input = input.to_string();
    run_cli(args.iter().copied(), &mut || Ok(input.clone()))
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn validator() -> jsonschema::Validator {
    jsonschema::validator_for(&serde_json::from_str(REPORT_SCHEMA).unwrap()).unwrap()
}

/// Random expression text over the ring signature, with redundant
/// parentheses, unary signs and spacing.
fn random_text(rng: &mut ChaCha8Rng, m: usize, n: usize, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => format!("{}", rng.gen_range(0..7)),
            1 => format!("u{}", rng.gen_range(1..=n)),
            2 => {
                let mut s = String::new();
                for _ in 0..rng.gen_range(1..=2) {
                    s.push_str(&format!("d{}", rng.gen_range(1..=m)));
                    if rng.gen_bool(0.4) {
                        s.push_str(&format!("^{}", rng.gen_range(1..=2)));
                    }
                    s.push('*');
                }
                format!("{s}u{}", rng.gen_range(1..=n))
            }
            _ => format!("{}/{}", rng.gen_range(-5..=5), rng.gen_range(1..=4)).replace("-", "(-1)*"),
        };
    }
    let a = random_text(rng, m, n, depth - 1);
    let b = random_text(rng, m, n, depth - 1);
    match rng.gen_range(0..6) {
        0 => format!("{a} + {b}"),
        1 => format!("{a}-({b})"),
        2 => format!("({a}) * ({b})"),
        3 => format!("({a})^{}", rng.gen_range(0..=2)),
        4 => format!("-({a})"),
        _ => format!("( {a} )*{b}"),
    }
}

#[test]
fn print_parse_round_trip_on_random_polys() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let ring = random_ring(&mut rng);
        let f = random_diff_poly(&mut rng, &ring, 3, 3, 4);
        let text = print_diff_poly(&f);
        assert_eq!(parse_diff_poly(&text, &ring).unwrap(), f, "{text}");
    }
}

#[test]
fn parse_print_is_canonical_on_random_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let ring = delta_kernel::diff_ring::DiffRing::over_q(rng.gen_range(1..=3), rng.gen_range(1..=2));
        let text = random_text(&mut rng, ring.m(), ring.n(), 3);
        let f = parse_diff_poly(&text, &ring).unwrap_or_else(|e| panic!("{text}: {e}"));
        let printed = print_diff_poly(&f);
        let g = parse_diff_poly(&printed, &ring).unwrap();
        assert_eq!(f, g, "{text}");
        assert_eq!(print_diff_poly(&g), printed);
    }
}

#[test]
fn dspec_blocks_round_trip() {
    let pf = parse_problem(&std::fs::read_to_string(problem("vector_fields.dk")).unwrap()).unwrap();
    for (name, spec) in &pf.dspecs {
        let text = format!("m=1 n=1\n{}", print_dspec(name, spec));
        let again = parse_problem(&text).unwrap();
        assert_eq!(&again.dspecs[0].1, spec);
    }
}

#[test]
fn spec_examples() {
    let v = json(&["bound", "--json", "--system", "L", &problem("corpus_m2.dk")]);
    assert_eq!(v["results"]["l"], 2);
    assert_eq!(v["results"]["l1"], 2);
    assert_eq!(v["results"]["l2"], 2);
    assert_eq!(v["results"]["removable"], serde_json::json!([[1, 1, 1]]));

    let v = json(&["height", "--json", "(t^2+1)/(t-1)"]);
    assert_eq!(v["results"]["height"], 2);

    let v = json(&["darboux", "--deg", "2", "--spec", "rotation", "--json", &problem("vector_fields.dk")]);
    let found = v["results"]["darboux"].as_array().unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0]["f"], "x^2 + y^2");
    assert_eq!(found[0]["cofactors"], serde_json::json!(["0"]));
}

#[test]
fn combinatorial_commands_record_the_assumption() {
    let f = problem("corpus_m2.dk");
    for args in [
        vec!["bound", "--system", "L"],
        vec!["dimfn", "--max-t", "3", "--system", "L"],
        vec!["prolong", "--t", "2", "--system", "L"],
        vec!["extract-dvariety", "--system", "L"],
    ] {
        let mut a = args.clone();
        a.push("--json");
        a.push(&f);
        let v = json(&a);
        let assumptions: Vec<&str> = v["assumptions"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
        assert!(
            assumptions.contains(&"input set assumed to be a characteristic set; primality/coherence not verified"),
            "{args:?}"
        );
    }
}

fn every_command() -> Vec<Vec<String>> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        s(&["analyze", "--system", "L", &problem("corpus_m2.dk")]),
        s(&["bound", &problem("corpus_m1.dk")]),
        s(&["dimfn", "--max-t", "4", "--system", "L", &problem("corpus_m2.dk")]),
        s(&["prolong", "--t", "3", "--system", "S", &problem("corpus_m1.dk")]),
        s(&["extract-dvariety", "--system", "L", &problem("corpus_m2.dk")]),
        s(&["darboux", "--deg", "3", "--method", "groebner", "--spec", "shear", &problem("vector_fields.dk")]),
        s(&["integrals", "--deg", "2", "--spec", "scaling", &problem("vector_fields.dk")]),
        s(&["height", "t^3/(t^2+1)"]),
        s(&["solve-ode", "--deg", "2", &problem("odes.dk")]),
        s(&["reduce", "g", "--modulo", "A", &problem("reduce.dk")]),
        s(&["wedge-check", "--instances", "60", "--seed", "9"]),
        s(&["run", &problem("reduce.dk")]),
        s(&["run", &problem("corpus_m1.dk")]),
        s(&["run", &problem("odes.dk")]),
        s(&["run", &problem("vector_fields.dk")]),
    ]
}

#[test]
fn json_reports_validate_and_are_deterministic() {
    let v = validator();
    for args in every_command() {
        let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
        a.insert(1, "--json");
        let first = run(&a);
        assert_eq!(first.code, 0, "{a:?}: {}", first.stderr);
        let doc: Value = serde_json::from_str(&first.stdout).unwrap();
        if let Err(e) = v.validate(&doc) {
            panic!("{a:?}: {e}");
        }
        assert_eq!(doc["timings"], Value::Null);
        assert_eq!(run(&a).stdout, first.stdout, "{a:?}");

        a.insert(1, "--timings");
        let timed: Value = serde_json::from_str(&run(&a).stdout).unwrap();
        assert!(v.is_valid(&timed), "{a:?}");
        assert!(timed["timings"]["total_ms"].is_number());
    }
}

#[test]
fn seed_flag_and_default_are_reproducible() {
    let a = run(&["wedge-check", "--json", "--instances", "40"]);
    let b = run(&["wedge-check", "--json", "--instances", "40"]);
    assert_eq!(a, b);
    let c = run(&["wedge-check", "--json", "--instances", "40", "--seed", "1729"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn stdin_is_read_for_dash() {
    let out = run_stdin(&["bound", "-"], "m=1 n=1\npoly f = d1*u1 - u1\n");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("l = 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["bound"]).code, 1);
    assert_eq!(run(&["bound", "/nonexistent/file.dk"]).code, 1);
    let out = run_stdin(&["analyze", "-"], "m=2 n=1\npoly f = d3*u1\n");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2, column 10: derivation index 3 exceeds m=2"), "{}", out.stderr);
    assert_eq!(run_stdin(&["analyze", "-"], "m=1 n=1\npoly f = u1^\n").code, 2);
    assert_eq!(run_stdin(&["bound", "-"], "m=1 n=1\nsystem A = d1*u1, u1\n").code, 3);
    assert_eq!(run_stdin(&["prolong", "--t", "0", "-"], "m=1 n=1\npoly f = d1*u1 - u1\n").code, 3);
    let mismatch = run(&["darboux", "--deg", "2", &problem("corpus_m2.dk")]);
    assert_eq!(mismatch.code, 1);
    let mismatch = run(&["darboux", "--deg", "2", "--spec", "L", &problem("corpus_m2.dk")]);
    assert_eq!(mismatch.code, 1);
    assert!(mismatch.stderr.contains("is a differential-polynomial system, not a D-spec"));
    assert_eq!(run(&["height", "t/(t-t)"]).code, 2);
}

#[test]
fn text_output_is_stable() {
    let out = run(&["run", &problem("corpus_m1.dk")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("== bound_E: bound --system E\nsystem E\nl = 1 (l1 = 1, l2 = 0)\nleader points: (1,1)\nremovable points: (0,1)\n"));
}

#[test]
fn binary_end_to_end() {
    use std::io::Write;
    use std::process::{Command, Stdio};
    let mut child = Command::new(env!("CARGO_BIN_EXE_delta-kernel"))
        .args(["bound", "--json", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"m=2 n=1\npoly a = d1^2*u1 - u1\npoly b = d2^2*u1 - u1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["removable"], serde_json::json!([[1, 1, 1]]));
    let status = Command::new(env!("CARGO_BIN_EXE_delta-kernel")).arg("nope").stderr(Stdio::null()).status().unwrap();
    assert_eq!(status.code(), Some(1));
}
