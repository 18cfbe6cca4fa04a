//! Heights on Q(t) and rational solutions of bounded height of `P(x, x') = 0`.
//!
//! Run with `cargo run --example heights_and_odes`.

use delta_kernel::cli::parse::{parse_ode, parse_ratfunc_in_t, Pos};
use delta_kernel::heights::{height_ratfunc, rational_solution_search, t_names};

fn main() {
    for text in ["(t^2+1)/(t-1)", "t^5 - 3", "1/(t^3 + t)", "7"] {
        let g = parse_ratfunc_in_t(text, 1).unwrap();
        println!("h({}) = {}", g.render(&t_names(1)), height_ratfunc(&g));
    }

    let start = Pos { line: 1, col: 1 };
    for text in ["y + x^2", "y - x", "t*y - 2*x"] {
        let p = parse_ode(text, 1, start).unwrap();
        let report = rational_solution_search(&p, 2).unwrap();
        let sols: Vec<String> = report.solutions.iter().map(|s| format!("{} (h = {})", s.solution.render(&t_names(1)), s.height)).collect();
        println!("\n{} = 0, height <= 2", p.render());
        println!("  solutions: {}", sols.join(", "));
        println!("  N_obs = {:?}", report.n_obs);
    }
}
