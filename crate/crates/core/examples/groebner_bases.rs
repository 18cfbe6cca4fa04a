//! Gröbner bases over Q: reduced bases, dimensions, elimination and
//! rational points.
//!
//! Run with `cargo run --example groebner_bases`.

use delta_kernel::algebra::{rat, MultiPoly, TermOrder};
use delta_kernel::groebner::{buchberger, elimination_ideal, ideal_dimension, rational_points};

fn main() {
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let v = |i| MultiPoly::var(3, TermOrder::GrevLex, i);
    let c = |q| MultiPoly::constant(3, TermOrder::GrevLex, rat(q, 1));
    let (x, y, z) = (v(0), v(1), v(2));
    let gens = vec![&(&x * &x) - &y, &(&y * &y) - &z, &(&x * &z) - &c(1)];

    let gb = buchberger(&gens, TermOrder::GrevLex).unwrap();
    println!("grevlex basis:");
    for g in gb.gens() {
        println!("  {}", g.render(&names));
    }
    println!("dimension {}", ideal_dimension(&gb));

    let elim = buchberger(&gens, TermOrder::Elim(2)).unwrap();
    let in_z: Vec<String> = elimination_ideal(&elim, 2).iter().map(|g| g.render(&names[2..])).collect();
    println!("eliminating x, y: {in_z:?}");

    let points = rational_points(&gens, 3, 16).unwrap();
    println!("rational points (complete: {}): {:?}", points.complete, points.points.iter().map(|p| p.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
}
