//! Round-trip and algebraic invariants over randomized instances: the text
//! formats invert, restriction composes like set intersection, global
//! relabeling is a group action, matchings stay inverse-symmetric, and
//! deleting matching pairs never destroys plain colorability.

mod support;

use proptest::prelude::*;

use dpcolor::cover::Cover;
use dpcolor::io::{
    parse_cover, parse_graph, serialize_cover, serialize_graph,
};
use dpcolor::perm::all_permutations;
use dpcolor::solver::{solve, Mode};
use dpcolor::Vertex;

fn arb_instance() -> impl Strategy<Value = (Cover, u64)> {
    (0u64..1_000_000).prop_map(|seed| {
        let mut rng = support::rng(seed);
        use rand::Rng;
        let n = rng.gen_range(1..=7);
        let d = rng.gen_range(0..=3);
        let g = support::random_d_degenerate(n, d, &mut rng);
        let k = rng.gen_range(1..=4);
        let plain = rng.gen_bool(0.5);
        (support::random_cover(&g, k, plain, &mut rng), seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_formats_round_trip((h, _) in arb_instance()) {
        let gtext = serialize_graph(h.graph());
        let g2 = parse_graph(&gtext).unwrap();
        prop_assert_eq!(&g2, h.graph());
        let ctext = serialize_cover(&h);
        let h2 = parse_cover(&ctext, &g2).unwrap();
        prop_assert_eq!(h2, h);
    }

    #[test]
    fn accessor_symmetry((h, _) in arb_instance()) {
        for &(u, v) in h.graph().edges() {
            for &c in h.list(u) {
                if let Some(t) = h.image(u, v, c) {
                    prop_assert_eq!(h.image(v, u, t), Some(c));
                }
            }
        }
    }

    #[test]
    fn restriction_composes((h, seed) in arb_instance()) {
        let mut rng = support::rng(seed ^ 0x5eed);
        use rand::Rng;
        let n = h.graph().n();
        let a: Vec<Vertex> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
        let b_mask: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.7)).collect();
        // Restrict to a, then to (the positions of) a ∩ b.
        let inner: Vec<usize> = a
            .iter()
            .enumerate()
            .filter(|(_, &v)| b_mask[v])
            .map(|(i, _)| i)
            .collect();
        let both: Vec<Vertex> = a.iter().copied().filter(|&v| b_mask[v]).collect();
        prop_assert_eq!(h.restrict(&a).restrict(&inner), h.restrict(&both));
    }

    #[test]
    fn relabeling_is_a_group_action((h, seed) in arb_instance()) {
        let perms = all_permutations(h.palette());
        let mut rng = support::rng(seed ^ 0x9e3779b9);
        use rand::prelude::SliceRandom;
        let pi = perms.choose(&mut rng).unwrap();
        let rho = perms.choose(&mut rng).unwrap();
        let compose: Vec<usize> = (0..h.palette()).map(|c| pi[rho[c]]).collect();
        prop_assert_eq!(
            h.relabel_global(rho).unwrap().relabel_global(pi).unwrap(),
            h.relabel_global(&compose).unwrap()
        );
        let id: Vec<usize> = (0..h.palette()).collect();
        prop_assert_eq!(h.relabel_global(&id).unwrap(), h.clone());
    }

    #[test]
    fn deleting_pairs_preserves_plain_satisfiability((h, seed) in arb_instance()) {
        let k = h.k().max(1);
        if solve(&h, Mode::Proper, k).satisfiable {
            let mut rng = support::rng(seed ^ 0xdead);
            use rand::Rng;
            // Drop a random pair from the first nonempty matching; the
            // lists stay intact, so a constraint only disappears.
            let candidates: Vec<_> = h
                .graph()
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| h.matching(u, v).is_some_and(|m| !m.is_empty()))
                .collect();
            if let Some(&(u, v)) = candidates.first() {
                let pairs: Vec<_> = h.matching(u, v).unwrap().pairs().collect();
                let dropped = pairs[rng.gen_range(0..pairs.len())];
                let reduced = drop_pair(&h, (u, v), dropped);
                prop_assert!(solve(&reduced, Mode::Proper, k).satisfiable);
            }
        }
    }
}

/// Same cover with one matching pair removed.
fn drop_pair(h: &Cover, edge: (Vertex, Vertex), pair: (usize, usize)) -> Cover {
    use dpcolor::cover::Matching;
    let lists = h.graph().vertices().map(|w| h.list(w).clone()).collect();
    let matchings = h
        .graph()
        .edges()
        .iter()
        .map(|&(x, y)| {
            let m = h.matching(x, y).cloned().unwrap_or_default();
            let m = if (x, y) == edge {
                Matching::from_pairs(m.pairs().filter(|&p| p != pair)).unwrap()
            } else {
                m
            };
            ((x, y), m)
        })
        .collect();
    Cover::new(h.graph().clone(), h.k(), h.palette(), lists, matchings).unwrap()
}
