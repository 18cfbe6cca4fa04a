//! Prolonged ideals, their saturated dimensions against `|B_t|`, and the
//! D-variety data at the prolongation bound.
//!
//! Run with `cargo run --example dvariety_extraction`.

use delta_kernel::cli::parse_diff_poly;
use delta_kernel::diff_ring::{AutoreducedSet, DiffRing};
use delta_kernel::initial_sets::InitialSetRep;
use delta_kernel::prolongation::{extract_dvariety, prolong_ideal, SectionValue};

fn main() {
    let ring = DiffRing::over_q(2, 1);
    let elems = ["d1^2*u1 - u1", "d2^2*u1 - u1"].map(|e| parse_diff_poly(e, &ring).unwrap());
    let set = AutoreducedSet::new(&ring, elems.to_vec()).unwrap();
    let rep = InitialSetRep::from_leaders(&set);

    for t in 2..=4 {
        let sat = prolong_ideal(&set, t).unwrap().saturate().unwrap();
        println!("t = {t}: {} generators, saturated dimension {}, |B_t| = {}", prolong_ideal(&set, t).unwrap().generators.len(), sat.dimension, rep.count_bt(t));
    }

    let data = extract_dvariety(&set).unwrap();
    let names = data.frame().names();
    println!("\nD-variety at l = {}: fiber dimension r = {}", data.bound.l, data.r);
    println!("V has dimension {} in coordinates {}", data.v_saturated.dimension, names.join(", "));
    for (k, row) in data.sections.iter().enumerate() {
        for (i, value) in row.iter().enumerate() {
            let shown = match value {
                SectionValue::Coordinate(c) => c.to_string(),
                SectionValue::Free(c) => format!("{c} (free)"),
                SectionValue::Affine(e) => e.render(&data.frame().names()),
            };
            println!("  d{}({}) = {shown}", k + 1, names[i]);
        }
    }
}
