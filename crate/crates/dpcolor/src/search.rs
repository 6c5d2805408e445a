//! Decide equitable colorability over explicit cover families by
//! symmetry-reduced exhaustive enumeration, and shrink witness covers.
//!
//! Only *global* color permutations (optionally combined with graph
//! automorphisms) are quotiented out. Per-vertex relabeling — the standard
//! normalization for plain DP colorability — changes class sizes and is
//! unsound for the equitable modes; [`relabel_local`] exists so the tests
//! can exhibit that failure, and no spanning-tree normalization is ever
//! applied.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::cover::{Cover, Matching};
use crate::graph::Graph;
use crate::perm;
use crate::solver::{solve, solve_with, Mode, SolveOptions};
use crate::{Color, Error, Result, Vertex};

/// Which covers the family ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Plain covers whose matchings are full permutations of the palette.
    PlainFull,
    /// Plain covers with arbitrary partial injections.
    PlainPartial,
    /// Lists drawn from a larger palette, arbitrary partial injections.
    GeneralLists,
}

impl FamilyKind {
    pub fn token(self) -> &'static str {
        match self {
            FamilyKind::PlainFull => "plain-full",
            FamilyKind::PlainPartial => "plain-partial",
            FamilyKind::GeneralLists => "general-lists",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<FamilyKind> {
        match s {
            "plain-full" => Ok(FamilyKind::PlainFull),
            "plain-partial" => Ok(FamilyKind::PlainPartial),
            "general-lists" => Ok(FamilyKind::GeneralLists),
            other => Err(Error::BadParams(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    None,
    /// One representative per conjugacy class on the first edge.
    GlobalColorPerm,
    /// Additionally quotient by graph automorphisms.
    GlobalColorPermAuto,
}

impl Symmetry {
    pub fn token(self) -> &'static str {
        match self {
            Symmetry::None => "none",
            Symmetry::GlobalColorPerm => "color-perm",
            Symmetry::GlobalColorPermAuto => "color-perm-auto",
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Symmetry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Symmetry> {
        match s {
            "none" => Ok(Symmetry::None),
            "color-perm" => Ok(Symmetry::GlobalColorPerm),
            "color-perm-auto" => Ok(Symmetry::GlobalColorPermAuto),
            other => Err(Error::BadParams(format!("unknown symmetry `{other}`"))),
        }
    }
}

pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// An enumeration specification: family kind, palette, symmetry reduction
/// and a hard budget on the enumeration size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverFamily {
    pub kind: FamilyKind,
    /// Palette size; for the plain families this must equal k.
    pub palette_size: usize,
    pub symmetry: Symmetry,
    pub budget: u128,
}

impl CoverFamily {
    pub fn plain_full(k: usize, symmetry: Symmetry) -> CoverFamily {
        CoverFamily {
            kind: FamilyKind::PlainFull,
            palette_size: k,
            symmetry,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u128) -> CoverFamily {
        self.budget = budget;
        self
    }
}

/// A deterministic, indexable stream of covers. `get` decodes a raw index
/// into a family member; members may additionally be filtered (canonical
/// forms only) before they are yielded.
pub struct CoverStream {
    graph: Graph,
    k: usize,
    palette: usize,
    family: CoverFamily,
    /// Matching options for the first edge (symmetry-reduced) and for every
    /// later edge, for the plain kinds. Empty for general lists.
    first_edge: Vec<Matching>,
    other_edges: Vec<Matching>,
    /// List choices per vertex (general lists only).
    list_choices: Vec<Vec<Color>>,
    /// Partial injection patterns between sorted k-lists (general lists).
    patterns: Vec<Vec<Option<usize>>>,
    /// Automorphisms, when the symmetry includes them.
    autos: Vec<Vec<Vertex>>,
    len: u128,
}

impl CoverStream {
    /// Total number of raw indices.
    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn family(&self) -> CoverFamily {
        self.family
    }

    /// Decodes one raw index.
    pub fn get(&self, idx: u128) -> Cover {
        assert!(idx < self.len);
        match self.family.kind {
            FamilyKind::PlainFull | FamilyKind::PlainPartial => self.get_plain(idx),
            FamilyKind::GeneralLists => self.get_general(idx),
        }
    }

    fn get_plain(&self, idx: u128) -> Cover {
        let m = self.graph.edge_count();
        if m == 0 {
            return Cover::plain_with(self.graph.clone(), self.k, |_, _| Matching::empty());
        }
        let base = self.other_edges.len() as u128;
        let mut digits = Vec::with_capacity(m);
        let mut rest = idx;
        for _ in 0..m - 1 {
            digits.push((rest % base) as usize);
            rest /= base;
        }
        digits.push(rest as usize); // first-edge index, most significant
        digits.reverse();
        let edges = self.graph.edges().to_vec();
        let mut it = digits.into_iter();
        let first = self.first_edge[it.next().unwrap()].clone();
        let mut matchings = std::collections::BTreeMap::new();
        matchings.insert(edges[0], first);
        for (&e, d) in edges[1..].iter().zip(it) {
            matchings.insert(e, self.other_edges[d].clone());
        }
        let lists = vec![(0..self.k).collect::<BTreeSet<_>>(); self.graph.n()];
        Cover::new(self.graph.clone(), self.k, self.palette, lists, matchings).unwrap()
    }

    fn get_general(&self, idx: u128) -> Cover {
        let n = self.graph.n();
        let m = self.graph.edge_count();
        let lc = self.list_choices.len() as u128;
        let pc = self.patterns.len() as u128;
        let mut rest = idx;
        let mut edge_digits = Vec::with_capacity(m);
        for _ in 0..m {
            edge_digits.push((rest % pc) as usize);
            rest /= pc;
        }
        edge_digits.reverse();
        let mut list_digits = Vec::with_capacity(n);
        for _ in 0..n {
            list_digits.push((rest % lc) as usize);
            rest /= lc;
        }
        list_digits.reverse();
        let lists: Vec<BTreeSet<Color>> = list_digits
            .iter()
            .map(|&d| self.list_choices[d].iter().copied().collect())
            .collect();
        let mut matchings = std::collections::BTreeMap::new();
        for (&(u, v), &d) in self.graph.edges().iter().zip(edge_digits.iter()) {
            let lu: Vec<Color> = lists[u].iter().copied().collect();
            let lv: Vec<Color> = lists[v].iter().copied().collect();
            let pairs = self.patterns[d]
                .iter()
                .enumerate()
                .filter_map(|(s, t)| t.map(|t| (lu[s], lv[t])));
            matchings.insert((u, v), Matching::from_pairs(pairs).unwrap());
        }
        Cover::new(self.graph.clone(), self.k, self.palette, lists, matchings).unwrap()
    }

    /// Applies the post-filter. For the plain kinds under the color-perm
    /// quotient the reduction is already built into the first-edge options;
    /// general lists and the automorphism quotient keep canonical orbit
    /// representatives only.
    pub fn yielded(&self, idx: u128) -> Option<Cover> {
        let cover = self.get(idx);
        let needs_filter = match (self.family.kind, self.family.symmetry) {
            (_, Symmetry::None) => false,
            (FamilyKind::GeneralLists, _) => true,
            (_, Symmetry::GlobalColorPerm) => false,
            (_, Symmetry::GlobalColorPermAuto) => true,
        };
        if !needs_filter || self.is_stream_canonical(&cover) {
            Some(cover)
        } else {
            None
        }
    }

    /// Is this cover the least member of its orbit that also lies in the
    /// raw stream?
    fn is_stream_canonical(&self, cover: &Cover) -> bool {
        let color_perms = perm::all_permutations(self.palette);
        let identity: Vec<Vertex> = self.graph.vertices().collect();
        let vertex_perms: Vec<Vec<Vertex>> = if self.autos.is_empty() {
            vec![identity]
        } else {
            self.autos.clone()
        };
        let in_stream = |c: &Cover| match self.family.kind {
            FamilyKind::GeneralLists => true,
            _ => {
                let edges = self.graph.edges();
                edges.is_empty()
                    || self
                        .first_edge
                        .contains(c.matching(edges[0].0, edges[0].1).unwrap())
            }
        };
        for pi in &color_perms {
            let recolored = cover.relabel_global(pi).unwrap();
            for psi in &vertex_perms {
                let candidate = relabel_vertices(&recolored, psi);
                if in_stream(&candidate) && candidate < *cover {
                    return false;
                }
            }
        }
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = Cover> + '_ {
        (0..self.len).filter_map(move |i| self.yielded(i))
    }
}

/// Permutes the vertex names of a cover by a graph automorphism: vertex u
/// of the input becomes vertex psi[u] of the output.
pub fn relabel_vertices(h: &Cover, psi: &[Vertex]) -> Cover {
    let g = h.graph();
    let mut lists: Vec<BTreeSet<Color>> = vec![BTreeSet::new(); g.n()];
    for u in g.vertices() {
        lists[psi[u]] = h.list(u).clone();
    }
    let mut matchings = std::collections::BTreeMap::new();
    for &(u, v) in g.edges() {
        let (nu, nv) = (psi[u], psi[v]);
        let key = (nu.min(nv), nu.max(nv));
        let m = if nu < nv {
            h.directed_matching(u, v)
        } else {
            h.directed_matching(v, u)
        };
        matchings.insert(key, m);
    }
    Cover::new(g.clone(), h.k(), h.palette(), lists, matchings).unwrap()
}

/// Relabels the list of a single vertex, conjugating the incident matchings
/// on that side only. Sound for plain DP colorability, unsound for the
/// equitable modes; kept for the tests that demonstrate exactly that.
pub fn relabel_local(h: &Cover, v: Vertex, pi: &[Color]) -> Result<Cover> {
    if pi.len() != h.palette() {
        return Err(Error::BadParams("permutation length != palette".into()));
    }
    let g = h.graph();
    let lists: Vec<BTreeSet<Color>> = g
        .vertices()
        .map(|w| {
            if w == v {
                h.list(w).iter().map(|&c| pi[c]).collect()
            } else {
                h.list(w).clone()
            }
        })
        .collect();
    let mut matchings = std::collections::BTreeMap::new();
    for &(a, b) in g.edges() {
        let m = h.matching(a, b).unwrap().clone();
        let m = if a == v {
            Matching::from_pairs(m.pairs().map(|(s, t)| (pi[s], t)))?
        } else if b == v {
            Matching::from_pairs(m.pairs().map(|(s, t)| (s, pi[t])))?
        } else {
            m
        };
        matchings.insert((a, b), m);
    }
    Cover::new(g.clone(), h.k(), h.palette(), lists, matchings)
}

/// All graph automorphisms by pruned backtracking over vertex images.
/// Guarded to small graphs.
pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<Vertex>>> {
    let n = g.n();
    if n > 10 {
        return Err(Error::BadParams(
            "automorphism enumeration is limited to n <= 10".into(),
        ));
    }
    let mut out = Vec::new();
    let mut psi: Vec<usize> = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        g: &Graph,
        v: usize,
        psi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let n = g.n();
        if v == n {
            out.push(psi.clone());
            return;
        }
        'cand: for w in 0..n {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            for u in 0..v {
                if g.has_edge(u, v) != g.has_edge(psi[u], w) {
                    continue 'cand;
                }
            }
            psi[v] = w;
            used[w] = true;
            rec(g, v + 1, psi, used, out);
            used[w] = false;
            psi[v] = usize::MAX;
        }
    }
    rec(g, 0, &mut psi, &mut used, &mut out);
    Ok(out)
}

/// Builds the deterministic cover stream for a family, budget-guarded.
pub fn enumerate_covers(g: &Graph, k: usize, family: &CoverFamily) -> Result<CoverStream> {
    let m = g.edge_count() as u32;
    let per_edge: u128 = match family.kind {
        FamilyKind::PlainFull => perm::factorial(k),
        FamilyKind::PlainPartial | FamilyKind::GeneralLists => perm::partial_injection_count(k),
    };
    // Conservative guard before any materialization.
    let crude = per_edge
        .checked_pow(m)
        .unwrap_or(u128::MAX)
        .max(per_edge);
    if family.kind != FamilyKind::GeneralLists && family.symmetry == Symmetry::None && crude > family.budget {
        return Err(Error::BudgetExceeded {
            estimate: crude,
            budget: family.budget,
        });
    }
    if m > 0 && per_edge.checked_pow(m - 1).map_or(true, |x| x > family.budget) {
        return Err(Error::BudgetExceeded {
            estimate: crude,
            budget: family.budget,
        });
    }
    let palette = match family.kind {
        FamilyKind::GeneralLists => {
            let gamma = family.palette_size;
            if gamma < k || gamma > g.n() * k {
                return Err(Error::BadParams(format!(
                    "general-lists palette must satisfy k <= gamma <= n*k, got {gamma}"
                )));
            }
            gamma
        }
        _ => {
            if family.palette_size != k {
                return Err(Error::BadParams(
                    "plain families use palette size k".into(),
                ));
            }
            k
        }
    };

    let (first_edge, other_edges, list_choices, patterns): (
        Vec<Matching>,
        Vec<Matching>,
        Vec<Vec<Color>>,
        Vec<Vec<Option<usize>>>,
    ) = match family.kind {
        FamilyKind::PlainFull => {
            let all: Vec<Matching> = perm::all_permutations(k)
                .iter()
                .map(|p| Matching::from_permutation(p))
                .collect();
            let first = match family.symmetry {
                Symmetry::None => all.clone(),
                _ => perm::conjugacy_representatives(k)
                    .iter()
                    .map(|p| Matching::from_permutation(p))
                    .collect(),
            };
            (first, all, Vec::new(), Vec::new())
        }
        FamilyKind::PlainPartial => {
            let raw = perm::all_partial_injections(k);
            let all: Vec<Matching> = raw.iter().map(|p| pattern_to_matching(p)).collect();
            let first = match family.symmetry {
                Symmetry::None => all.clone(),
                _ => partial_injection_representatives(k)
                    .iter()
                    .map(|p| pattern_to_matching(p))
                    .collect(),
            };
            (first, all, Vec::new(), Vec::new())
        }
        FamilyKind::GeneralLists => {
            let choices = k_subsets(palette, k);
            let patterns = perm::all_partial_injections(k);
            (Vec::new(), Vec::new(), choices, patterns)
        }
    };

    let len: u128 = match family.kind {
        FamilyKind::GeneralLists => {
            let lc = list_choices.len() as u128;
            let pc = patterns.len() as u128;
            lc.checked_pow(g.n() as u32)
                .and_then(|a| pc.checked_pow(m).map(|b| a.saturating_mul(b)))
                .unwrap_or(u128::MAX)
        }
        _ if m == 0 => 1,
        _ => {
            let base = other_edges.len() as u128;
            base.checked_pow(m - 1)
                .map(|x| x.saturating_mul(first_edge.len() as u128))
                .unwrap_or(u128::MAX)
        }
    };
    if len > family.budget {
        return Err(Error::BudgetExceeded {
            estimate: len,
            budget: family.budget,
        });
    }
    let autos = if family.symmetry == Symmetry::GlobalColorPermAuto {
        automorphisms(g)?
    } else {
        Vec::new()
    };
    Ok(CoverStream {
        graph: g.clone(),
        k,
        palette,
        family: *family,
        first_edge,
        other_edges,
        list_choices,
        patterns,
        autos,
        len,
    })
}

fn pattern_to_matching(p: &[Option<usize>]) -> Matching {
    Matching::from_pairs(
        p.iter()
            .enumerate()
            .filter_map(|(s, t)| t.map(|t| (s, t))),
    )
    .unwrap()
}

/// Lexicographically least member of each conjugacy orbit of partial
/// injections under simultaneous source/target relabeling.
fn partial_injection_representatives(k: usize) -> Vec<Vec<Option<usize>>> {
    let all = perm::all_partial_injections(k);
    let perms = perm::all_permutations(k);
    let mut reps = Vec::new();
    for p in &all {
        let canon = perms
            .iter()
            .map(|pi| {
                let mut q = vec![None; k];
                for (s, t) in p.iter().enumerate() {
                    if let Some(t) = t {
                        q[pi[s]] = Some(pi[*t]);
                    }
                }
                q
            })
            .min()
            .unwrap();
        if canon == *p {
            reps.push(p.clone());
        }
    }
    reps
}

/// All k-subsets of 0..gamma in lexicographic order.
fn k_subsets(gamma: usize, k: usize) -> Vec<Vec<Color>> {
    fn rec(gamma: usize, k: usize, start: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..gamma {
            cur.push(c);
            rec(gamma, k, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(gamma, k, 0, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone)]
pub enum Outcome {
    AllColorable,
    Witness(Cover),
}

/// Result of a family decision. `covers_enumerated` counts yielded covers
/// up to and including the witness (or the whole stream), so it is
/// identical however the index range was sharded.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub covers_enumerated: u128,
    pub family: CoverFamily,
    pub mode: Mode,
    pub k: usize,
}

impl SearchResult {
    pub fn witness(&self) -> Option<&Cover> {
        match &self.outcome {
            Outcome::Witness(w) => Some(w),
            Outcome::AllColorable => None,
        }
    }
}

/// Scans one raw index range; returns (yield count in range before or at
/// the witness, witness raw index and cover if one was found).
fn scan_range(
    stream: &CoverStream,
    lo: u128,
    hi: u128,
    mode: Mode,
    k: usize,
) -> Result<(u128, Option<(u128, Cover)>)> {
    let mut yielded: u128 = 0;
    for idx in lo..hi {
        let Some(cover) = stream.yielded(idx) else {
            continue;
        };
        yielded += 1;
        let verdict = solve(&cover, mode, k);
        if !verdict.satisfiable {
            // Re-verify with the prune disabled before reporting.
            let recheck = solve_with(&cover, mode, k, SolveOptions { hall_prune: false });
            if recheck.satisfiable {
                return Err(Error::invariant(
                    "pruned and unpruned solver disagree on a witness",
                ));
            }
            return Ok((yielded, Some((idx, cover))));
        }
    }
    Ok((yielded, None))
}

/// Decides the family sequentially: stops at the first unsatisfiable cover
/// (a witness that the graph is not equitably DP k-colorable outright) or
/// exhausts the stream, which proves colorability relative to this family
/// only.
pub fn decide_family(g: &Graph, k: usize, mode: Mode, family: &CoverFamily) -> Result<SearchResult> {
    decide_family_sharded(g, k, mode, family, 1)
}

/// Sharded decision: the raw index range is split into contiguous chunks
/// scanned in parallel. The reported witness is the least-index one, so the
/// result is identical to the sequential scan.
pub fn decide_family_sharded(
    g: &Graph,
    k: usize,
    mode: Mode,
    family: &CoverFamily,
    shards: usize,
) -> Result<SearchResult> {
    if !matches!(mode, Mode::MBounded | Mode::StronglyMBounded) {
        return Err(Error::BadParams(
            "family decisions are for the bounded modes".into(),
        ));
    }
    let shards = shards.max(1);
    let stream = enumerate_covers(g, k, family)?;
    let total = stream.len();
    let chunk = total.div_ceil(shards as u128).max(1);
    let ranges: Vec<(u128, u128)> = (0..shards as u128)
        .map(|s| ((s * chunk).min(total), ((s + 1) * chunk).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect();

    let results: Vec<(u128, Option<(u128, Cover)>)> = if ranges.len() <= 1 {
        vec![scan_range(&stream, 0, total, mode, k)?]
    } else {
        let mut slots: Vec<Option<Result<(u128, Option<(u128, Cover)>)>>> =
            (0..ranges.len()).map(|_| None).collect();
        std::thread::scope(|scope| {
            let stream = &stream;
            let mut handles = Vec::new();
            for &(lo, hi) in &ranges {
                handles.push(scope.spawn(move || scan_range(stream, lo, hi, mode, k)));
            }
            for (slot, handle) in slots.iter_mut().zip(handles) {
                *slot = Some(handle.join().expect("search shard panicked"));
            }
        });
        let mut out = Vec::new();
        for slot in slots {
            out.push(slot.unwrap()?);
        }
        out
    };

    // Merge: least witness index wins; the yield count covers everything at
    // or before it.
    let mut best: Option<(u128, Cover, usize)> = None;
    for (i, (_, w)) in results.iter().enumerate() {
        if let Some((idx, cover)) = w {
            if best.as_ref().map_or(true, |(b, _, _)| idx < b) {
                best = Some((*idx, cover.clone(), i));
            }
        }
    }
    match best {
        Some((_, cover, shard_idx)) => {
            let count: u128 = results[..shard_idx]
                .iter()
                .map(|(y, _)| y)
                .sum::<u128>()
                + results[shard_idx].0;
            Ok(SearchResult {
                outcome: Outcome::Witness(cover),
                covers_enumerated: count,
                family: *family,
                mode,
                k,
            })
        }
        None => Ok(SearchResult {
            outcome: Outcome::AllColorable,
            covers_enumerated: results.iter().map(|(y, _)| y).sum(),
            family: *family,
            mode,
            k,
        }),
    }
}

/// Greedy witness shrinking: replace non-tree-edge matchings by the
/// identity, then delete matching pairs one at a time, keeping the cover
/// unsatisfiable throughout. Runs to a fixpoint.
pub fn minimize_witness(k: usize, mode: Mode, w: &Cover) -> Result<Cover> {
    if solve(w, mode, k).satisfiable {
        return Err(Error::NotAWitness);
    }
    let g = w.graph().clone();
    let tree = spanning_forest_edges(&g);
    let mut cur = w.clone();
    loop {
        let mut changed = false;
        for &(u, v) in g.edges() {
            if tree.contains(&(u, v)) {
                continue;
            }
            let common: Vec<Color> = cur.list(u).intersection(cur.list(v)).copied().collect();
            let identity = Matching::identity_on(common);
            if cur.matching(u, v) == Some(&identity) {
                continue;
            }
            let cand = replace_matching(&cur, u, v, identity);
            if !solve(&cand, mode, k).satisfiable {
                cur = cand;
                changed = true;
            }
        }
        for &(u, v) in g.edges() {
            let pairs: Vec<(Color, Color)> = cur.matching(u, v).map(|m| m.pairs().collect()).unwrap_or_default();
            for (a, b) in pairs {
                let mut reduced: Vec<(Color, Color)> = cur
                    .matching(u, v)
                    .unwrap()
                    .pairs()
                    .filter(|&(x, y)| (x, y) != (a, b))
                    .collect();
                reduced.sort_unstable();
                let cand = replace_matching(&cur, u, v, Matching::from_pairs(reduced)?);
                if !solve(&cand, mode, k).satisfiable {
                    cur = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(cur);
        }
    }
}

fn replace_matching(h: &Cover, u: Vertex, v: Vertex, m: Matching) -> Cover {
    let g = h.graph();
    let lists = g.vertices().map(|w| h.list(w).clone()).collect();
    let mut matchings = std::collections::BTreeMap::new();
    for &(a, b) in g.edges() {
        let chosen = if (a, b) == (u, v) {
            m.clone()
        } else {
            h.matching(a, b).cloned().unwrap_or_default()
        };
        matchings.insert((a, b), chosen);
    }
    Cover::new(g.clone(), h.k(), h.palette(), lists, matchings).unwrap()
}

/// Edges of a breadth-first spanning forest, in canonical form.
fn spanning_forest_edges(g: &Graph) -> BTreeSet<(Vertex, Vertex)> {
    let mut seen = vec![false; g.n()];
    let mut tree = BTreeSet::new();
    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    tree.insert((v.min(w), v.max(w)));
                    queue.push_back(w);
                }
            }
        }
    }
    tree
}
