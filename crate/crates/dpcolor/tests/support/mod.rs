//! Seeded instance generators shared by the integration suites.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use dpcolor::cover::{Cover, Matching};
use dpcolor::graph::{is_star, Graph};
use dpcolor::{Color, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph built along an ordering where each vertex picks at most
/// `d` earlier neighbors, so the degeneracy is at most d.
pub fn random_d_degenerate(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let cap = d.min(v);
        let count = rng.gen_range(0..=cap);
        let mut earlier: Vec<Vertex> = (0..v).collect();
        earlier.shuffle(rng);
        for &u in earlier.iter().take(count) {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random non-star forest with maximum degree at most `max_deg`: each new
/// vertex either starts a component or attaches to an earlier vertex with
/// spare degree.
pub fn random_forest(n: usize, max_deg: usize, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let mut edges = Vec::new();
        let mut deg = vec![0usize; n];
        for v in 1..n {
            if rng.gen_bool(0.85) {
                let candidates: Vec<Vertex> =
                    (0..v).filter(|&u| deg[u] < max_deg).collect();
                if let Some(&u) = candidates.choose(rng) {
                    edges.push((u, v));
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        if !is_star(&g) {
            return g;
        }
    }
}

/// Random disjoint union of paths and cycles covering exactly n vertices
/// (maximum degree 2).
pub fn random_paths_and_cycles(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(0);
    let mut left = n;
    while left > 0 {
        let take = rng.gen_range(1..=left.min(8));
        let piece = if take >= 3 && rng.gen_bool(0.5) {
            Graph::cycle(take)
        } else {
            Graph::path(take)
        };
        g = g.disjoint_union(&piece);
        left -= take;
    }
    g
}

/// Random valid k-cover: plain lists or k-subsets of a slightly larger
/// palette, and a random partial injection on every edge (full permutations
/// with probability 1/2 when the lists allow it).
pub fn random_cover(g: &Graph, k: usize, plain: bool, rng: &mut ChaCha8Rng) -> Cover {
    let palette = if plain { k } else { k + rng.gen_range(0..=2) };
    let lists: Vec<std::collections::BTreeSet<Color>> = (0..g.n())
        .map(|_| {
            if plain {
                (0..k).collect()
            } else {
                let mut colors: Vec<Color> = (0..palette).collect();
                colors.shuffle(rng);
                colors.into_iter().take(k).collect()
            }
        })
        .collect();
    let mut matchings: BTreeMap<(Vertex, Vertex), Matching> = BTreeMap::new();
    for &(u, v) in g.edges() {
        let lu: Vec<Color> = lists[u].iter().copied().collect();
        let mut lv: Vec<Color> = lists[v].iter().copied().collect();
        lv.shuffle(rng);
        let size = if rng.gen_bool(0.5) {
            k
        } else {
            rng.gen_range(0..=k)
        };
        let pairs: Vec<(Color, Color)> = lu.iter().copied().zip(lv).take(size).collect();
        matchings.insert((u, v), Matching::from_pairs(pairs).unwrap());
    }
    let cover = Cover::new(g.clone(), k, palette, lists, matchings).unwrap();
    debug_assert!(cover.validate().is_empty());
    cover
}
