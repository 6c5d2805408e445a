//! Strongly equitable coloring of forests with k ≥ max{Δ, 4} colors, by
//! recursion: peel an end whose removal leaves a non-star when k does not
//! divide n; otherwise split off a hub star, color the rest, and extend over
//! the hub block by distinct representatives on colors whose classes are not
//! full. Disconnected forests are chained into a tree through virtual edges
//! between component ends; the virtual edges steer the structural choices
//! only and never carry matchings or constraints.

use std::collections::BTreeSet;

use crate::cover::{ClassProfile, Coloring, Cover};
use crate::graph::{find_hub, find_nonstar_ends, is_star, Graph};
use crate::solver::{check_coloring, sdr, solve, Mode};
use crate::{Color, Error, Result, Vertex};

#[derive(Debug, Clone, Copy)]
pub struct ForestOptions {
    /// Bases of the recursion run the exhaustive oracle on at most this
    /// many vertices; larger bases fail loudly instead of blowing up.
    pub base_case_cap: usize,
}

impl Default for ForestOptions {
    fn default() -> Self {
        ForestOptions { base_case_cap: 16 }
    }
}

/// Strongly m-bounded coloring of a non-star forest for k ≥ max{Δ(G), 4}.
pub fn sedp_forest(h: &Cover, k: usize) -> Result<Coloring> {
    sedp_forest_with(h, k, &ForestOptions::default())
}

pub fn sedp_forest_with(h: &Cover, k: usize, opts: &ForestOptions) -> Result<Coloring> {
    let g = h.graph();
    if !g.is_forest() {
        return Err(Error::pre("input is not a forest"));
    }
    if is_star(g) {
        return Err(Error::pre("stars are excluded (their witness covers are real)"));
    }
    if k < g.max_degree().max(4) {
        return Err(Error::pre(format!(
            "need k >= max(Delta, 4): k = {k}, Delta = {}",
            g.max_degree()
        )));
    }
    if !h.is_k_cover() || h.k() != k {
        return Err(Error::pre("cover is not a k-cover for the requested k"));
    }
    let f = forest_rec(h, k, opts)?;
    let report = check_coloring(h, &f, Mode::StronglyMBounded, k)?;
    if !report.ok() {
        return Err(Error::invariant(format!(
            "forest recursion returned a non-SE coloring: {:?}",
            report.violations
        )));
    }
    Ok(f)
}

fn forest_rec(h: &Cover, k: usize, opts: &ForestOptions) -> Result<Coloring> {
    let g = h.graph();
    let n = g.n();
    if n <= k {
        return base_injective(h, k, opts);
    }
    if n % k > 0 {
        // n >= k+1 >= 5, so the end lemma applies.
        let (l, _) = find_nonstar_ends(g)?;
        peel_extend(h, k, l, &mut |sub| forest_rec(sub, k, opts))
    } else {
        divisible_step(h, k, &mut |sub| forest_rec(sub, k, opts))
    }
}

/// Base of the recursions: n ≤ k, injective coloring via the oracle.
/// Guaranteed to exist on non-star inputs; an unsatisfiable base would
/// contradict the tight characterization and is surfaced as such.
pub(crate) fn base_injective(h: &Cover, k: usize, opts: &ForestOptions) -> Result<Coloring> {
    let g = h.graph();
    let n = g.n();
    debug_assert!(n <= k);
    if n > opts.base_case_cap {
        return Err(Error::pre(format!(
            "base case on {n} vertices exceeds the configured cap {}",
            opts.base_case_cap
        )));
    }
    let verdict = solve(h, Mode::Injective, k);
    match verdict.witness {
        Some(f) => Ok(f),
        None => Err(Error::TheoremViolation(format!(
            "no injective coloring on a {n}-vertex base with k = {k}"
        ))),
    }
}

/// Colors g − peel recursively, then gives `peel` a color that is neither
/// blocked nor sitting in a class that is already full for the whole graph.
pub(crate) fn peel_extend(
    h: &Cover,
    k: usize,
    peel: Vertex,
    recurse: &mut dyn FnMut(&Cover) -> Result<Coloring>,
) -> Result<Coloring> {
    let g = h.graph();
    let n = g.n();
    let keep: Vec<Vertex> = g.vertices().filter(|&v| v != peel).collect();
    let sub = h.restrict(&keep);
    let mut f = recurse(&sub)?.lift(&keep, n);

    let full = n.div_ceil(k);
    let profile = ClassProfile::of(&f, k);
    let mut blocked: BTreeSet<Color> = BTreeSet::new();
    for &w in g.neighbors(peel) {
        if let Some(c) = f.get(w) {
            if let Some(b) = h.image(w, peel, c) {
                blocked.insert(b);
            }
        }
    }
    let pick = h.list(peel).iter().copied().find(|&c| {
        !blocked.contains(&c) && profile.class_sizes.get(&c).copied().unwrap_or(0) < full
    });
    match pick {
        Some(c) => {
            f.set(peel, c);
            Ok(f)
        }
        None => Err(Error::invariant(format!(
            "no non-full unblocked color for peeled vertex {peel}"
        ))),
    }
}

/// The k | n step: choose a hub of the (virtually connected) tree, split
/// off its star block, peel one more end from the remainder, color the
/// remainder recursively, and extend over the block plus the peeled end by
/// distinct representatives drawn from non-full classes.
pub(crate) fn divisible_step(
    h: &Cover,
    k: usize,
    recurse: &mut dyn FnMut(&Cover) -> Result<Coloring>,
) -> Result<Coloring> {
    let g = h.graph();
    let n = g.n();
    let tree = chain_components(g)?;

    let hub = find_hub(&tree)?;
    let u = hub.hub;
    debug_assert!(hub.body.len() <= k - 1);
    let mut block: Vec<Vertex> = hub.body.clone();
    if block.len() == k - 1 {
        // Drop the least body vertex; it becomes isolated in the remainder.
        block.remove(0);
    }
    block.push(u);
    block.sort_unstable();

    let rest: Vec<Vertex> = g.vertices().filter(|v| !block.contains(v)).collect();
    let rest_tree = tree.induced(&rest);
    if is_star(&rest_tree) {
        return Err(Error::invariant("hub remainder is a star"));
    }
    // An end of the remainder, distinct from the hub tail, whose removal
    // leaves a non-star.
    let (e1, e2) = find_nonstar_ends(&rest_tree)?;
    let l = if rest[e1] != hub.tail { rest[e1] } else { rest[e2] };

    let colored: Vec<Vertex> = rest.iter().copied().filter(|&v| v != l).collect();
    let sub = h.restrict(&colored);
    debug_assert!(!is_star(sub.graph()));
    let f = recurse(&sub)?.lift(&colored, n);

    extend_over_block(h, k, &f, u, &block, l)
}

/// Extension of a strongly bounded coloring over the hub block plus an
/// isolated end: color the hub first, preferring to dodge the designated
/// conflict color, then find distinct representatives for the rest.
fn extend_over_block(
    h: &Cover,
    k: usize,
    f: &Coloring,
    u: Vertex,
    block: &[Vertex],
    l: Vertex,
) -> Result<Coloring> {
    let g = h.graph();
    let n = g.n();
    let full = n / k;
    debug_assert_eq!(n % k, 0);
    let profile = ClassProfile::of(f, k);
    let reduced = |z: Vertex| -> Vec<Color> {
        let mut blocked: BTreeSet<Color> = BTreeSet::new();
        for &w in g.neighbors(z) {
            if let Some(c) = f.get(w) {
                if let Some(b) = h.image(w, z, c) {
                    blocked.insert(b);
                }
            }
        }
        h.list(z)
            .iter()
            .copied()
            .filter(|&c| {
                !blocked.contains(&c) && profile.class_sizes.get(&c).copied().unwrap_or(0) < full
            })
            .collect()
    };

    let mut targets: Vec<Vertex> = block.iter().copied().filter(|&z| z != u).collect();
    targets.push(l);
    targets.sort_unstable();
    targets.dedup();
    let body: Vec<Vertex> = targets.iter().copied().filter(|&z| z != l).collect();

    let hub_colors = reduced(u);
    let target_reduced: Vec<Vec<Color>> = targets.iter().map(|&z| reduced(z)).collect();
    let l_reduced = reduced(l);

    // The designated conflict: the least color available to the least body
    // vertex but not to the peeled end.
    let designated: Option<Color> = body.first().and_then(|&vv| {
        reduced(vv)
            .into_iter()
            .find(|c| !l_reduced.contains(c))
    });
    let mut candidates = hub_colors.clone();
    if let Some(gamma) = designated {
        let vv = body[0];
        candidates.sort_by_key(|&a| (h.image(u, vv, a) == Some(gamma), a));
    }

    for alpha in candidates {
        let sets: Vec<Vec<Color>> = targets
            .iter()
            .zip(&target_reduced)
            .map(|(&z, base)| {
                let hub_block = h.image(u, z, alpha);
                base.iter()
                    .copied()
                    .filter(|&c| c != alpha && Some(c) != hub_block)
                    .collect()
            })
            .collect();
        if let Some(choice) = sdr(&sets) {
            let mut out = f.clone();
            out.set(u, alpha);
            for (&z, c) in targets.iter().zip(choice) {
                out.set(z, c);
            }
            let report = check_coloring(h, &out, Mode::StronglyMBounded, k)?;
            if !report.ok() {
                return Err(Error::invariant(format!(
                    "hub extension failed verification: {:?}",
                    report.violations
                )));
            }
            return Ok(out);
        }
    }
    Err(Error::invariant(
        "no hub color admits a distinct-representative extension",
    ))
}

/// Chains the components of a forest into one tree by linking an end of
/// each component to an end of the next. Components are visited in order of
/// their least vertex; the entry of a component is its least end and the
/// exit its greatest, so the result is deterministic.
fn chain_components(g: &Graph) -> Result<Graph> {
    let comps = g.components();
    if comps.len() <= 1 {
        return Ok(g.clone());
    }
    let mut links = Vec::new();
    let mut prev_exit: Option<Vertex> = None;
    for comp in &comps {
        let ends: Vec<Vertex> = comp.iter().copied().filter(|&v| g.degree(v) <= 1).collect();
        debug_assert!(!ends.is_empty(), "every tree has an end");
        let entry = ends[0];
        let exit = if comp.len() >= 2 {
            *ends.last().unwrap()
        } else {
            entry
        };
        debug_assert!(comp.len() == 1 || entry != exit);
        if let Some(p) = prev_exit {
            links.push((p.min(entry), p.max(entry)));
        }
        prev_exit = Some(exit);
    }
    g.with_extra_edges(&links)
}
