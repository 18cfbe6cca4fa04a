//! Initial sets: removable points, counts and the prolongation bound.

mod common;

use proptest::prelude::*;

use common::{corpus, in_b, maximal_points_by_scan};
use delta_kernel::initial_sets::{for_each_in_simplex, prolongation_bound, ExpPoint, InitialSetRep};

fn exp_set() -> impl Strategy<Value = (usize, usize, Vec<ExpPoint>)> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(m, n)| {
        let point = (prop::collection::vec(0u32..=4, m), 1..=n).prop_map(|(r, j)| ExpPoint::new(r, j));
        (Just(m), Just(n), prop::collection::vec(point, 0..=5))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn removable_points_match_scan((m, n, e) in exp_set()) {
        let rep = InitialSetRep::new(m, n, e.clone());
        let scanned = maximal_points_by_scan(m, n, &e, 4 * m as u32 + 1);
        prop_assert_eq!(rep.removable_points(), scanned);
    }

    #[test]
    fn counts_match_definition((m, n, e) in exp_set(), t in 0u32..=6) {
        let rep = InitialSetRep::new(m, n, e.clone());
        let mut expected = 0u64;
        for j in 1..=n {
            for_each_in_simplex(m, t, |r| expected += in_b(&e, &ExpPoint::new(r.to_vec(), j)) as u64);
        }
        prop_assert_eq!(rep.count_bt(t), expected);
        prop_assert!(rep.count_bt(t + 1) >= rep.count_bt(t));
    }

    #[test]
    fn removing_a_removable_point_keeps_b_downward_closed((m, n, e) in exp_set()) {
        let rep = InitialSetRep::new(m, n, e.clone());
        for p in rep.removable_points() {
            prop_assert!(in_b(&e, &p));
            for k in 0..m {
                if p.r[k] > 0 {
                    let mut below = p.r.clone();
                    below[k] -= 1;
                    let q = ExpPoint::new(below, p.j);
                    prop_assert!(in_b(&e, &q));
                }
                prop_assert!(!in_b(&e, &p.step(k)));
            }
        }
    }
}

#[test]
fn corpus_bounds() {
    for (name, set, l, removable) in corpus() {
        let b = prolongation_bound(&set);
        assert_eq!(b.l, l, "{name}");
        assert_eq!(b.l, b.l1.max(b.l2), "{name}");
        let got: Vec<Vec<u32>> = b.removable.iter().map(|p| p.to_vec()).collect();
        assert_eq!(got, removable, "{name}");
    }
}
