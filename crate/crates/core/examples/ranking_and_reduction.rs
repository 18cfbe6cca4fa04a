//! Leaders, separants and initials under the orderly ranking, then a Ritt
//! reduction whose certificate is re-expanded and checked.
//!
//! Run with `cargo run --example ranking_and_reduction`.

use delta_kernel::cli::{parse_diff_poly, print_diff_poly};
use delta_kernel::diff_ring::{ritt_reduce, AutoreducedSet, DiffRing};

fn main() {
    let ring = DiffRing::over_q(2, 1);
    let f = parse_diff_poly("d2*u1 - d1^2*u1", &ring).unwrap();
    let (leader, degree) = f.rank().unwrap();
    println!("f = {}", print_diff_poly(&f));
    println!("  leader {leader}, degree {degree}, order {}", f.order());
    println!("  separant {}", print_diff_poly(&f.separant().unwrap()));
    println!("  initial  {}", print_diff_poly(&f.initial().unwrap()));

    let set = AutoreducedSet::new(&ring, vec![f]).unwrap();
    let g = parse_diff_poly("(d1^3*u1)^2 + d1*d2*u1 - u1", &ring).unwrap();
    let (rem, cert) = ritt_reduce(&g, &set).unwrap();
    println!("\nreduce g = {}", print_diff_poly(&g));
    for term in &cert.terms {
        println!("  element {} differentiated by {} times {}", term.element, term.theta.render(), print_diff_poly(&term.quotient));
    }
    println!("  separant exponents {:?}, initial exponents {:?}", cert.separant_exps, cert.initial_exps);
    println!("  remainder {}", print_diff_poly(&rem));
    println!("  certificate verified: {}", cert.verify(&g, &set).unwrap());
}
