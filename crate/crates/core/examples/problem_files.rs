//! Reading a problem file and running its queries through the library API,
//! the same path the `delta-kernel` binary takes.
//!
//! Run with `cargo run --example problem_files`.

use delta_kernel::cli::{parse_problem, run_cli, run_query};

const PROBLEM: &str = "\
# two commuting derivations, one indeterminate
m=2 n=1 coeffs=Q
poly a = d1^2*u1 - u1
poly b = d2^2*u1 - u1
system L = a, b
query ell = bound --system L
query dims = dimfn --max-t 3 --system L
";

fn main() {
    let pf = parse_problem(PROBLEM).unwrap();
    for (name, line) in &pf.queries {
        let report = run_query(line, &pf).unwrap();
        println!("== {name}\n{}", report.text);
    }

    let mut stdin = || Ok(PROBLEM.to_string());
    let out = run_cli(["bound", "--json", "-"], &mut stdin);
    println!("exit code {}\n{}", out.code, out.stdout);

    let bad = run_cli(["bound", "-"], &mut || Ok("m=2 n=1\npoly f = d3*u1\n".to_string()));
    print!("exit code {}: {}", bad.code, bad.stderr);
}
