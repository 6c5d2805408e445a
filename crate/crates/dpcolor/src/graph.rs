//! Simple undirected graphs on dense vertex indices, plus the structural
//! subroutines the coloring algorithms lean on: degeneracy orderings, star
//! tests, non-star end pairs, hubs, and greedy independent sets.

use crate::{Error, Result, Vertex};

/// Simple undirected graph. Immutable after construction; edges are stored
/// once with `u < v` and adjacency lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    max_degree: usize,
    min_degree: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, out-of-range
    /// endpoints and parallel edges. Edge direction is normalized to `u < v`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph> {
        let mut norm: Vec<(Vertex, Vertex)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("parallel edge".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        let min_degree = adj.iter().map(Vec::len).min().unwrap_or(0);
        Ok(Graph {
            n,
            edges: norm,
            adj,
            max_degree,
            min_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical form, sorted ascending with `u < v`.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Induced subgraph on `keep` (must be sorted, deduplicated, in range).
    /// Vertex `keep[i]` becomes vertex `i` of the result.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect::<Vec<_>>();
        Graph::new(keep.len(), edges).expect("induced subgraph of a valid graph is valid")
    }

    /// Same vertex set with extra edges added. Used for the virtual linkage
    /// that chains forest components; the input graph is never mutated.
    pub fn with_extra_edges(&self, extra: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra);
        Graph::new(self.n, edges)
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Acyclic check: a graph is a forest iff every component is a tree.
    pub fn is_forest(&self) -> bool {
        let comps = self.components();
        self.edge_count() + comps.len() == self.n
    }

    // Constructors for the common small families.

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::new(n, edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    /// Star on `n` vertices, center 0.
    pub fn star(n: usize) -> Graph {
        assert!(n >= 1);
        Graph::new(n, (1..n).map(|v| (0, v))).unwrap()
    }

    /// Complete bipartite graph; the first `a` vertices form one side.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::new(a + b, edges).unwrap()
    }

    /// Join: `self` and `other` side by side with all cross edges added.
    pub fn join(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges: Vec<_> = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        for u in 0..self.n {
            for v in 0..other.n {
                edges.push((u, off + v));
            }
        }
        Graph::new(self.n + other.n, edges).unwrap()
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges: Vec<_> = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::new(self.n + other.n, edges).unwrap()
    }
}

/// A vertex ordering together with its degeneracy: every vertex has at most
/// `degeneracy` neighbors earlier in the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    pub order: Vec<Vertex>,
    pub degeneracy: usize,
}

impl DegeneracyOrdering {
    /// Scans the positional degree bound directly.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        self.order.iter().enumerate().all(|(i, &v)| {
            g.neighbors(v).iter().filter(|&&w| pos[w] < i).count() <= self.degeneracy
        })
    }
}

/// Degeneracy ordering by repeated minimum-degree removal, reversed at the
/// end. Ties break on the smallest vertex index, so the result is
/// deterministic. The reported degeneracy is the graph degeneracy (the
/// minimum over all orderings).
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyOrdering {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut removal = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        degeneracy = degeneracy.max(deg[v]);
        removed[v] = true;
        removal.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    removal.reverse();
    DegeneracyOrdering {
        order: removal,
        degeneracy,
    }
}

/// True iff the graph is a star: connected, one vertex adjacent to all
/// others, no other edges. Single vertices and single edges count as stars.
pub fn is_star(g: &Graph) -> bool {
    let n = g.n();
    n == 1 || (n >= 2 && g.edge_count() == n - 1 && g.max_degree() == n - 1)
}

/// An *end* is a vertex of degree at most 1.
pub fn is_end(g: &Graph, v: Vertex) -> bool {
    g.degree(v) <= 1
}

/// Finds two nonadjacent ends whose individual removal leaves a non-star.
/// Requires a forest on at least 5 vertices that is not itself a star.
/// Scans end pairs in index order, so the choice is deterministic.
pub fn find_nonstar_ends(g: &Graph) -> Result<(Vertex, Vertex)> {
    if !g.is_forest() {
        return Err(Error::pre("find_nonstar_ends: graph is not a forest"));
    }
    if g.n() < 5 {
        return Err(Error::pre("find_nonstar_ends: need at least 5 vertices"));
    }
    if is_star(g) {
        return Err(Error::pre("find_nonstar_ends: graph is a star"));
    }
    let ends: Vec<Vertex> = g.vertices().filter(|&v| is_end(g, v)).collect();
    let leaves_nonstar = |l: Vertex| {
        let keep: Vec<Vertex> = g.vertices().filter(|&v| v != l).collect();
        !is_star(&g.induced(&keep))
    };
    for (i, &l1) in ends.iter().enumerate() {
        for &l2 in &ends[i + 1..] {
            if !g.has_edge(l1, l2) && leaves_nonstar(l1) && leaves_nonstar(l2) {
                return Ok((l1, l2));
            }
        }
    }
    Err(Error::invariant(
        "no nonstar end pair found in a qualifying forest",
    ))
}

/// A hub: a vertex whose neighborhood is a nonempty set of ends plus exactly
/// one further vertex, the tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hub {
    pub hub: Vertex,
    pub body: Vec<Vertex>,
    pub tail: Vertex,
}

/// Finds a hub of a non-star tree with Δ ≥ 2, maximizing the hub degree;
/// ties break on the smallest hub index.
pub fn find_hub(g: &Graph) -> Result<Hub> {
    if !g.is_forest() || !g.is_connected() {
        return Err(Error::pre("find_hub: graph is not a tree"));
    }
    if g.max_degree() < 2 {
        return Err(Error::pre("find_hub: maximum degree below 2"));
    }
    if is_star(g) {
        return Err(Error::pre("find_hub: graph is a star"));
    }
    let mut best: Option<Hub> = None;
    for u in g.vertices() {
        let (body, rest): (Vec<Vertex>, Vec<Vertex>) =
            g.neighbors(u).iter().partition(|&&w| is_end(g, w));
        if body.is_empty() || rest.len() != 1 {
            continue;
        }
        let cand = Hub {
            hub: u,
            body,
            tail: rest[0],
        };
        let better = match &best {
            None => true,
            Some(b) => g.degree(u) > g.degree(b.hub),
        };
        if better {
            best = Some(cand);
        }
    }
    best.ok_or_else(|| Error::invariant("non-star tree with delta >= 2 has no hub"))
}

/// An independent set of exactly the requested size, taken from the largest
/// class of a greedy coloring along the index order, truncated to the lowest
/// indices. Guaranteed to exist when |G| ≥ (Δ+1)·size.
pub fn independent_set(g: &Graph, size: usize) -> Result<Vec<Vertex>> {
    if size == 0 {
        return Ok(Vec::new());
    }
    let classes = g.max_degree() + 1;
    let mut color = vec![usize::MAX; g.n()];
    for v in g.vertices() {
        let mut used = vec![false; classes];
        for &w in g.neighbors(v) {
            if color[w] != usize::MAX {
                used[color[w]] = true;
            }
        }
        color[v] = (0..classes).find(|&c| !used[c]).expect("greedy always fits");
    }
    let mut best: Option<Vec<Vertex>> = None;
    for c in 0..classes {
        let class: Vec<Vertex> = g.vertices().filter(|&v| color[v] == c).collect();
        if best.as_ref().map_or(true, |b| class.len() > b.len()) {
            best = Some(class);
        }
    }
    let mut class = best.unwrap();
    if class.len() < size {
        return Err(Error::NotFound(format!(
            "no greedy class of size {size}: largest has {}",
            class.len()
        )));
    }
    class.truncate(size);
    Ok(class)
}
