//! Covers: per-vertex color lists over a global palette plus per-edge partial
//! matchings between endpoint lists. A coloring must avoid every matched
//! pair; that single constraint subsumes ordinary coloring (plain normal
//! covers) and list coloring (normal covers).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::Graph;
use crate::{Color, Error, Result, Vertex};

/// Partial injection between two color lists, stored once per edge in the
/// canonical direction `u < v`. The reverse direction is computed on access,
/// which keeps the symmetry H(v,u) = H(u,v)⁻¹ true by construction.
///
/// Keys are unique by representation; duplicate *targets* are representable
/// so that [`Cover::validate`] can report them.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    pairs: BTreeMap<Color, Color>,
}

impl Matching {
    pub fn empty() -> Matching {
        Matching::default()
    }

    /// Collects pairs; errors on a duplicated source color (unrepresentable).
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Color, Color)>) -> Result<Matching> {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            if map.insert(a, b).is_some() {
                return Err(Error::InvalidCover(format!(
                    "matching maps color {a} twice"
                )));
            }
        }
        Ok(Matching { pairs: map })
    }

    /// Total permutation matching on `0..perm.len()`, `a -> perm[a]`.
    pub fn from_permutation(perm: &[Color]) -> Matching {
        Matching {
            pairs: perm.iter().copied().enumerate().collect(),
        }
    }

    /// Expands cycle notation over the palette `0..k`: colors not mentioned
    /// in any cycle are fixed points. `(1 2)(3)` on three colors becomes
    /// `from_cycles(3, &[&[0, 1]])`.
    pub fn from_cycles(k: usize, cycles: &[&[Color]]) -> Matching {
        let mut perm: Vec<Color> = (0..k).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                perm[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
        }
        Matching::from_permutation(&perm)
    }

    pub fn identity_on(colors: impl IntoIterator<Item = Color>) -> Matching {
        Matching {
            pairs: colors.into_iter().map(|c| (c, c)).collect(),
        }
    }

    pub fn get(&self, a: Color) -> Option<Color> {
        self.pairs.get(&a).copied()
    }

    /// Preimage lookup; linear, used on the non-canonical direction.
    pub fn get_inverse(&self, b: Color) -> Option<Color> {
        self.pairs.iter().find(|&(_, &t)| t == b).map(|(&s, _)| s)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Color, Color)> + '_ {
        self.pairs.iter().map(|(&a, &b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn inverse(&self) -> Matching {
        Matching {
            pairs: self.pairs.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// Conjugation by a global color permutation: (a -> b) becomes
    /// (π(a) -> π(b)).
    pub fn conjugate(&self, pi: &[Color]) -> Matching {
        Matching {
            pairs: self.pairs.iter().map(|(&a, &b)| (pi[a], pi[b])).collect(),
        }
    }

    pub fn remove_source(&mut self, a: Color) {
        self.pairs.remove(&a);
    }

    pub fn remove_target(&mut self, b: Color) {
        self.pairs.retain(|_, &mut t| t != b);
    }

    fn targets_injective(&self) -> bool {
        let targets: BTreeSet<Color> = self.pairs.values().copied().collect();
        targets.len() == self.pairs.len()
    }
}

/// A constraint-structure violation found by [`Cover::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ListColorOutOfPalette { vertex: Vertex, color: Color },
    MatchingSourceNotInList { edge: (Vertex, Vertex), color: Color },
    MatchingTargetNotInList { edge: (Vertex, Vertex), color: Color },
    MatchingNotInjective { edge: (Vertex, Vertex) },
    MatchingOnNonEdge { edge: (Vertex, Vertex) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ListColorOutOfPalette { vertex, color } => {
                write!(f, "list of vertex {vertex} contains color {color} outside the palette")
            }
            Violation::MatchingSourceNotInList { edge, color } => {
                write!(f, "matching on edge {edge:?} uses source color {color} not in the list of {}", edge.0)
            }
            Violation::MatchingTargetNotInList { edge, color } => {
                write!(f, "matching on edge {edge:?} uses target color {color} not in the list of {}", edge.1)
            }
            Violation::MatchingNotInjective { edge } => {
                write!(f, "matching on edge {edge:?} is not injective")
            }
            Violation::MatchingOnNonEdge { edge } => {
                write!(f, "matching on {edge:?}, which is not an edge")
            }
        }
    }
}

/// Classification flags for a cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverClass {
    /// All lists are equal.
    pub plain: bool,
    /// Every matching is the identity on the common sublist of its endpoints.
    pub normal: bool,
    /// Plain, and all matchings are equal as maps in the canonical direction.
    pub constant: bool,
    /// Every matching is total on L(u) into L(v) and fixed-point-free.
    pub all_derangements: bool,
}

/// Availability bookkeeping at a vertex under a partial coloring: `blocked`
/// colors are forced off by colored neighbors, `used` is the range of the
/// coloring, and `available` is the list minus both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Availability {
    pub available: BTreeSet<Color>,
    pub blocked: BTreeSet<Color>,
    pub used: BTreeSet<Color>,
}

/// A cover: lists plus matchings over a graph. `k` records the nominal list
/// size the cover was built with (lists can shrink under
/// [`Cover::remove_node`]); `palette` is |Γ|.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cover {
    graph: Graph,
    k: usize,
    palette: usize,
    lists: Vec<BTreeSet<Color>>,
    matchings: BTreeMap<(Vertex, Vertex), Matching>,
}

// Ord/PartialOrd compare (lists, matchings) after the graph; this is the
// lexicographic order the symmetry-reduction machinery relies on.

impl Cover {
    pub fn new(
        graph: Graph,
        k: usize,
        palette: usize,
        lists: Vec<BTreeSet<Color>>,
        matchings: BTreeMap<(Vertex, Vertex), Matching>,
    ) -> Result<Cover> {
        if lists.len() != graph.n() {
            return Err(Error::InvalidCover(format!(
                "expected {} lists, got {}",
                graph.n(),
                lists.len()
            )));
        }
        for (u, v) in matchings.keys() {
            if *u >= *v || *v >= graph.n() {
                return Err(Error::InvalidCover(format!(
                    "matching key ({u}, {v}) is not canonical"
                )));
            }
        }
        Ok(Cover {
            graph,
            k,
            palette,
            lists,
            matchings,
        })
    }

    /// Plain k-cover with per-edge matchings chosen by a function of the
    /// canonical edge.
    pub fn plain_with(
        graph: Graph,
        k: usize,
        mut matching: impl FnMut(Vertex, Vertex) -> Matching,
    ) -> Cover {
        let lists = vec![(0..k).collect::<BTreeSet<_>>(); graph.n()];
        let matchings = graph
            .edges()
            .iter()
            .map(|&(u, v)| ((u, v), matching(u, v)))
            .collect();
        Cover {
            k,
            palette: k,
            lists,
            matchings,
            graph,
        }
    }

    /// Plain k-cover with one shared matching on every edge.
    pub fn plain_uniform(graph: Graph, k: usize, m: &Matching) -> Cover {
        Cover::plain_with(graph, k, |_, _| m.clone())
    }

    /// Plain k-cover with identity matchings: ordinary k-coloring.
    pub fn plain_normal(graph: Graph, k: usize) -> Cover {
        Cover::plain_with(graph, k, |_, _| Matching::identity_on(0..k))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn list(&self, v: Vertex) -> &BTreeSet<Color> {
        &self.lists[v]
    }

    pub fn is_k_cover(&self) -> bool {
        self.lists.iter().all(|l| l.len() == self.k)
    }

    /// The matching stored on canonical edge `(u, v)`, `u < v`.
    pub fn matching(&self, u: Vertex, v: Vertex) -> Option<&Matching> {
        self.matchings.get(&(u, v))
    }

    /// Directional image H(u,v)(c): `None` when uv is not an edge or the
    /// matching leaves c unmatched.
    pub fn image(&self, u: Vertex, v: Vertex, c: Color) -> Option<Color> {
        if u < v {
            self.matchings.get(&(u, v))?.get(c)
        } else {
            self.matchings.get(&(v, u))?.get_inverse(c)
        }
    }

    /// The directed matching H(u,v) as an explicit map.
    pub fn directed_matching(&self, u: Vertex, v: Vertex) -> Matching {
        if u < v {
            self.matchings.get(&(u, v)).cloned().unwrap_or_default()
        } else {
            self.matchings
                .get(&(v, u))
                .map(Matching::inverse)
                .unwrap_or_default()
        }
    }

    /// Checks every cover invariant, reporting each violation with its
    /// location. An empty result means the cover is well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for v in self.graph.vertices() {
            for &c in &self.lists[v] {
                if c >= self.palette {
                    out.push(Violation::ListColorOutOfPalette { vertex: v, color: c });
                }
            }
        }
        for (&(u, v), m) in &self.matchings {
            if !self.graph.has_edge(u, v) {
                out.push(Violation::MatchingOnNonEdge { edge: (u, v) });
                continue;
            }
            for (a, b) in m.pairs() {
                if !self.lists[u].contains(&a) {
                    out.push(Violation::MatchingSourceNotInList { edge: (u, v), color: a });
                }
                if !self.lists[v].contains(&b) {
                    out.push(Violation::MatchingTargetNotInList { edge: (u, v), color: b });
                }
            }
            if !m.targets_injective() {
                out.push(Violation::MatchingNotInjective { edge: (u, v) });
            }
        }
        out
    }

    /// Restriction to the induced subgraph on `keep` (sorted ascending).
    /// Vertex `keep[i]` becomes vertex `i`; palette and nominal k unchanged.
    pub fn restrict(&self, keep: &[Vertex]) -> Cover {
        let graph = self.graph.induced(keep);
        let mut pos = vec![usize::MAX; self.graph.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let lists = keep.iter().map(|&v| self.lists[v].clone()).collect();
        let matchings = self
            .matchings
            .iter()
            .filter(|((u, v), _)| pos[*u] != usize::MAX && pos[*v] != usize::MAX)
            .map(|(&(u, v), m)| ((pos[u], pos[v]), m.clone()))
            .collect();
        Cover {
            graph,
            k: self.k,
            palette: self.palette,
            lists,
            matchings,
        }
    }

    /// Deletes the node (v, c): c leaves the list of v and every matching
    /// pair at v touching c is dropped. Lists may end up with unequal sizes.
    pub fn remove_node(&self, v: Vertex, c: Color) -> Result<Cover> {
        if !self.lists[v].contains(&c) {
            return Err(Error::ColorNotInList { vertex: v, color: c });
        }
        let mut out = self.clone();
        out.lists[v].remove(&c);
        for (&(a, b), m) in out.matchings.iter_mut() {
            if a == v {
                m.remove_source(c);
            } else if b == v {
                m.remove_target(c);
            }
        }
        Ok(out)
    }

    /// Applies a global palette permutation: lists map pointwise, matchings
    /// conjugate. `pi` must be a bijection on `0..palette`.
    pub fn relabel_global(&self, pi: &[Color]) -> Result<Cover> {
        if pi.len() != self.palette {
            return Err(Error::BadParams(format!(
                "permutation has length {}, palette is {}",
                pi.len(),
                self.palette
            )));
        }
        let mut seen = vec![false; self.palette];
        for &c in pi {
            if c >= self.palette || seen[c] {
                return Err(Error::BadParams("not a palette bijection".into()));
            }
            seen[c] = true;
        }
        let lists = self
            .lists
            .iter()
            .map(|l| l.iter().map(|&c| pi[c]).collect())
            .collect();
        let matchings = self
            .matchings
            .iter()
            .map(|(&e, m)| (e, m.conjugate(pi)))
            .collect();
        Ok(Cover {
            graph: self.graph.clone(),
            k: self.k,
            palette: self.palette,
            lists,
            matchings,
        })
    }

    pub fn classify(&self) -> CoverClass {
        let plain = self.lists.windows(2).all(|w| w[0] == w[1]);
        let normal = self.matchings.iter().all(|(&(u, v), m)| {
            let common: BTreeSet<Color> =
                self.lists[u].intersection(&self.lists[v]).copied().collect();
            m.pairs().count() == common.len() && common.iter().all(|&c| m.get(c) == Some(c))
        });
        let constant = plain && {
            let mut vals = self.matchings.values();
            match vals.next() {
                None => true,
                Some(first) => vals.all(|m| m == first),
            }
        };
        let all_derangements = self.matchings.iter().all(|(&(u, v), m)| {
            self.lists[u]
                .iter()
                .all(|&c| m.get(c).map_or(false, |t| t != c && self.lists[v].contains(&t)))
        });
        CoverClass {
            plain,
            normal,
            constant,
            all_derangements,
        }
    }

    /// Directed derangement test: H(u) ⊆ H(v), H(u,v) defined on all of
    /// H(u), and fixed-point-free.
    pub fn is_derangement(&self, u: Vertex, v: Vertex) -> bool {
        if !self.lists[u].is_subset(&self.lists[v]) {
            return false;
        }
        self.lists[u]
            .iter()
            .all(|&c| self.image(u, v, c).map_or(false, |t| t != c))
    }

    /// Availability at an (unassigned) vertex: blocked = images of colored
    /// neighbors, used = range of the coloring, available = list minus both.
    pub fn availability(&self, f: &Coloring, v: Vertex) -> Availability {
        debug_assert!(f.get(v).is_none(), "availability queried at a colored vertex");
        let mut blocked = BTreeSet::new();
        for &w in self.graph.neighbors(v) {
            if let Some(c) = f.get(w) {
                if let Some(b) = self.image(w, v, c) {
                    blocked.insert(b);
                }
            }
        }
        let used = f.range();
        let available = self.lists[v]
            .iter()
            .copied()
            .filter(|c| !blocked.contains(c) && !used.contains(c))
            .collect();
        Availability {
            available,
            blocked,
            used,
        }
    }
}

/// Partial vertex-to-color assignment over a fixed vertex count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    slots: Vec<Option<Color>>,
}

impl Coloring {
    pub fn new(n: usize) -> Coloring {
        Coloring {
            slots: vec![None; n],
        }
    }

    pub fn total(colors: impl IntoIterator<Item = Color>) -> Coloring {
        Coloring {
            slots: colors.into_iter().map(Some).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.slots[v]
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.slots[v] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        self.slots[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    pub fn assigned_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn first_unassigned(&self) -> Option<Vertex> {
        self.slots.iter().position(Option::is_none)
    }

    /// Assigned (vertex, color) pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(v, s)| s.map(|c| (v, c)))
    }

    pub fn range(&self) -> BTreeSet<Color> {
        self.iter().map(|(_, c)| c).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.range().len() == self.assigned_count()
    }

    /// Lifts a coloring of an induced subgraph back through its vertex map.
    pub fn lift(&self, keep: &[Vertex], n: usize) -> Coloring {
        let mut out = Coloring::new(n);
        for (i, c) in self.iter() {
            out.set(keep[i], c);
        }
        out
    }
}

/// Exact class-size accounting for a partial coloring with respect to a
/// palette budget k: `m` = ⌈n/k⌉ bounds every class in an m-bounded
/// coloring, a *large* class has size ⌊n/k⌋+1, and a strongly m-bounded
/// coloring has at most n mod k of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    pub class_sizes: BTreeMap<Color, usize>,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub large_size: usize,
    pub large_count: usize,
}

impl ClassProfile {
    pub fn of(f: &Coloring, k: usize) -> ClassProfile {
        assert!(k >= 1);
        let mut class_sizes: BTreeMap<Color, usize> = BTreeMap::new();
        for (_, c) in f.iter() {
            *class_sizes.entry(c).or_insert(0) += 1;
        }
        let n = f.assigned_count();
        let m = n.div_ceil(k);
        let large_size = n / k + 1;
        let large_count = class_sizes.values().filter(|&&s| s == large_size).count();
        ClassProfile {
            class_sizes,
            n,
            k,
            m,
            large_size,
            large_count,
        }
    }

    pub fn max_class(&self) -> usize {
        self.class_sizes.values().copied().max().unwrap_or(0)
    }

    pub fn is_m_bounded(&self) -> bool {
        self.max_class() <= self.m
    }

    pub fn is_strongly_m_bounded(&self) -> bool {
        self.is_m_bounded() && self.large_count <= self.n % self.k
    }

    pub fn is_injective(&self) -> bool {
        self.max_class() <= 1
    }

    /// Sorted multiset of nonempty class sizes; invariant under global
    /// relabeling.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.class_sizes.values().copied().collect();
        v.sort_unstable();
        v
    }
}
