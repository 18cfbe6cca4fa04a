//! Darboux polynomials and first integrals of planar polynomial vector
//! fields, with both search paths on the same field.
//!
//! Run with `cargo run --example darboux_search`.

use delta_kernel::algebra::{rat, MultiPoly, TermOrder};
use delta_kernel::dvariety::{darboux_search, first_integral_search, DSpec, DarbouxMethod};

fn main() {
    let x = MultiPoly::var(2, TermOrder::GrevLex, 0);
    let y = MultiPoly::var(2, TermOrder::GrevLex, 1);
    let one = MultiPoly::constant(2, TermOrder::GrevLex, rat(1, 1));
    let fields = [
        ("rotation (-y, x)", vec![-&y, x.clone()]),
        ("shear (1, y)", vec![one, y.clone()]),
        ("scaling (x, 2y)", vec![x.clone(), y.scale(&rat(2, 1))]),
    ];
    for (label, field) in fields {
        let spec = DSpec::new(2, vec![field], vec![]).unwrap();
        let names = spec.var_names();
        println!("{label}");
        for method in [DarbouxMethod::Eigen, DarbouxMethod::Groebner] {
            let report = darboux_search(&spec, 2, method, true).unwrap();
            let found: Vec<String> = report
                .results
                .iter()
                .map(|r| format!("{} [K = {}]", r.f.render(&names), r.cofactors[0].render(&names)))
                .collect();
            println!("  {:>8}: {}", method.name(), found.join(", "));
        }
        let fi = first_integral_search(&spec, 2, true).unwrap();
        let rational: Vec<String> = fi.rational.iter().map(|r| r.render(&names)).collect();
        let polynomial: Vec<String> = fi.polynomial.iter().map(|p| p.render(&names)).collect();
        println!("  polynomial first integrals: {polynomial:?}");
        println!("  rational first integrals:   {rational:?}");
    }
}
