//! Initial sets of characteristic sets: the counts `|B_t|`, removable points
//! and the prolongation bound `l = max(l1, l2)`.
//!
//! Run with `cargo run --example prolongation_bound`.

use delta_kernel::cli::{parse_diff_poly, print_diff_poly};
use delta_kernel::diff_ring::{AutoreducedSet, DiffRing};
use delta_kernel::initial_sets::{prolongation_bound, InitialSetRep};

fn main() {
    let cases: [(usize, &[&str]); 4] = [
        (1, &["d1*u1 - u1"]),
        (1, &["(d1*u1)^2 - u1"]),
        (2, &["d2*u1 - d1^2*u1"]),
        (2, &["d1^2*u1 - u1", "d2^2*u1 - u1"]),
    ];
    for (m, elems) in cases {
        let ring = DiffRing::over_q(m, 1);
        let polys = elems.iter().map(|e| parse_diff_poly(e, &ring).unwrap()).collect();
        let set = AutoreducedSet::new(&ring, polys).unwrap();
        let rep = InitialSetRep::from_leaders(&set);
        let bound = prolongation_bound(&set);
        let shown: Vec<String> = set.elements().iter().map(print_diff_poly).collect();
        let removable: Vec<String> = bound.removable.iter().map(|p| p.to_string()).collect();
        println!("{{{}}} with m = {m}", shown.join(", "));
        println!("  |B_t|, t = 0..5: {:?}", rep.dimension_function(5).values);
        println!("  removable points: [{}]", removable.join(", "));
        println!("  l = {} (l1 = {}, l2 = {})", bound.l, bound.l1, bound.l2);
    }
}
