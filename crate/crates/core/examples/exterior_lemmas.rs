//! Wedge products over Q and Q(t), and the two executable lemma checks.
//!
//! Run with `cargo run --example exterior_lemmas`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use delta_kernel::algebra::{rat, RatFunc};
use delta_kernel::exterior::{annihilator_dimension, lemma_a1_span_probe, lemma_a2_check, random_a2_instance, ExtVector};

fn main() {
    let e = |i: usize| ExtVector::basis(4, &[i], rat(1, 1)).unwrap();
    let e12 = e(1).wedge(&e(2)).unwrap();
    let omega = e12.add(&e(3).wedge(&e(4)).unwrap()).unwrap();
    println!("e1∧e2 has annihilator dimension {}", annihilator_dimension(&e12));
    println!("{omega} has annihilator dimension {}", annihilator_dimension(&omega));
    println!("ω∧ω = {}", omega.wedge(&omega).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(1729);
    for _ in 0..5 {
        let inst = random_a2_instance(&mut rng, 5);
        let verdict = lemma_a2_check(&inst.alphas, &inst.omega, &inst.beta);
        println!("annihilator instance in dimension {}: {}", inst.omega.dim(), verdict.label());
    }

    let t = RatFunc::var(1, 0);
    let v = |a: RatFunc, b: RatFunc| ExtVector::from_coords(&[a, b], &RatFunc::zero(1)).unwrap();
    let sample = [v(RatFunc::one(1), RatFunc::zero(1)), v(t.clone(), RatFunc::zero(1)), v(RatFunc::zero(1), RatFunc::one(1))];
    let report = lemma_a1_span_probe(&sample, 2).unwrap();
    println!("\nspan probe: dim_Q U = {}, dim_Q(t) U = {}, dim B = {}", report.dim_u_k, report.dim_u_big, report.dim_b);
    println!("  dim A = {:?}, image dimension {:?}, holds: {}", report.dim_a, report.dim_image, report.holds());
}
