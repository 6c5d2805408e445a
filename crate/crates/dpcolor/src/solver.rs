//! Ground-truth exact decision procedures: verify a coloring against a mode,
//! and exhaustively find or count H-colorings under class-size budgets with
//! a Hall-condition prune.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::cover::{ClassProfile, Coloring, Cover};
use crate::graph::degeneracy_ordering;
use crate::{Color, Error, Result, Vertex};

/// What counts as a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Any H-coloring.
    Proper,
    /// Every color class has size at most m = ⌈n/k⌉.
    MBounded,
    /// m-bounded with at most n mod k classes of size ⌊n/k⌋+1.
    StronglyMBounded,
    /// Every color class has size at most one.
    Injective,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::Proper,
        Mode::MBounded,
        Mode::StronglyMBounded,
        Mode::Injective,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Mode::Proper => "proper",
            Mode::MBounded => "mbounded",
            Mode::StronglyMBounded => "strongly-mbounded",
            Mode::Injective => "injective",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "proper" => Ok(Mode::Proper),
            "mbounded" => Ok(Mode::MBounded),
            "strongly-mbounded" | "strongly" => Ok(Mode::StronglyMBounded),
            "injective" => Ok(Mode::Injective),
            other => Err(Error::BadParams(format!("unknown mode `{other}`"))),
        }
    }
}

/// Outcome of an exhaustive solve.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub satisfiable: bool,
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Prune via Hall's condition on the independent suffix of the vertex
    /// order. Disabling it is only useful for the self-consistency suite.
    pub hall_prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { hall_prune: true }
    }
}

/// One reason a coloring fails a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckViolation {
    ColorNotInList { vertex: Vertex, color: Color },
    EdgeConflict { edge: (Vertex, Vertex) },
    ClassTooLarge { color: Color, size: usize, max: usize },
    TooManyLargeClasses { count: usize, allowed: usize },
}

impl fmt::Display for CheckViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckViolation::ColorNotInList { vertex, color } => {
                write!(f, "vertex {vertex} wears color {color} outside its list")
            }
            CheckViolation::EdgeConflict { edge } => {
                write!(f, "edge {edge:?} joins a matched color pair")
            }
            CheckViolation::ClassTooLarge { color, size, max } => {
                write!(f, "class of color {color} has size {size} > {max}")
            }
            CheckViolation::TooManyLargeClasses { count, allowed } => {
                write!(f, "{count} large classes, only {allowed} allowed")
            }
        }
    }
}

/// Per-violation detail from [`check_coloring`].
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub mode: Mode,
    pub k: usize,
    pub violations: Vec<CheckViolation>,
    pub profile: ClassProfile,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies a total coloring against a mode. Properness is part of every
/// mode; the bounds come from the exact class profile.
pub fn check_coloring(h: &Cover, f: &Coloring, mode: Mode, k: usize) -> Result<CheckReport> {
    assert!(k >= 1, "k must be positive");
    let g = h.graph();
    if f.n() != g.n() {
        return Err(Error::BadParams("coloring size does not match graph".into()));
    }
    if let Some(v) = f.first_unassigned() {
        return Err(Error::PartialColoring(v));
    }
    let mut violations = Vec::new();
    for (v, c) in f.iter() {
        if !h.list(v).contains(&c) {
            violations.push(CheckViolation::ColorNotInList { vertex: v, color: c });
        }
    }
    for &(u, v) in g.edges() {
        let cu = f.get(u).unwrap();
        if h.image(u, v, cu) == f.get(v) {
            violations.push(CheckViolation::EdgeConflict { edge: (u, v) });
        }
    }
    let profile = ClassProfile::of(f, k);
    match mode {
        Mode::Proper => {}
        Mode::MBounded => {
            push_bound_violations(&profile, profile.m, &mut violations);
        }
        Mode::StronglyMBounded => {
            push_bound_violations(&profile, profile.m, &mut violations);
            let allowed = profile.n % k;
            if profile.large_count > allowed {
                violations.push(CheckViolation::TooManyLargeClasses {
                    count: profile.large_count,
                    allowed,
                });
            }
        }
        Mode::Injective => {
            push_bound_violations(&profile, 1, &mut violations);
        }
    }
    Ok(CheckReport {
        mode,
        k,
        violations,
        profile,
    })
}

fn push_bound_violations(p: &ClassProfile, max: usize, out: &mut Vec<CheckViolation>) {
    for (&color, &size) in &p.class_sizes {
        if size > max {
            out.push(CheckViolation::ClassTooLarge { color, size, max });
        }
    }
}

/// Compiled solve state: dense tables for the matchings along the fixed
/// vertex order, plus the budget machinery for the mode.
struct Ctx {
    order: Vec<Vertex>,
    lists: Vec<Vec<Color>>,
    /// For each position i, the earlier positions adjacent to it together
    /// with the dense directed map (earlier vertex color -> blocked color).
    earlier: Vec<Vec<(usize, Vec<usize>)>>,
    /// First position from which the tail of the order is pairwise
    /// nonadjacent; static for a fixed order.
    suffix_start: usize,
    m_cap: usize,
    large_size: usize,
    large_allow: usize,
    hall_prune: bool,
}

const UNDEF: usize = usize::MAX;

impl Ctx {
    fn new(h: &Cover, mode: Mode, k: usize, opts: SolveOptions) -> Ctx {
        let g = h.graph();
        let n = g.n();
        // Reverse of the degeneracy ordering.
        let mut order = degeneracy_ordering(g).order;
        order.reverse();
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let palette = h.palette();
        let lists: Vec<Vec<Color>> = order
            .iter()
            .map(|&v| h.list(v).iter().copied().collect())
            .collect();
        let mut earlier: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); n];
        for &(u, v) in g.edges() {
            let (a, b) = if pos[u] < pos[v] { (u, v) } else { (v, u) };
            // a earlier than b: table maps a's colors to blocked colors at b.
            let mut table = vec![UNDEF; palette];
            for &c in h.list(a) {
                if let Some(t) = h.image(a, b, c) {
                    table[c] = t;
                }
            }
            earlier[pos[b]].push((pos[a], table));
        }
        let mut suffix_start = n;
        while suffix_start > 0 {
            let v = order[suffix_start - 1];
            if order[suffix_start..].iter().any(|&w| g.has_edge(v, w)) {
                break;
            }
            suffix_start -= 1;
        }
        let m_cap = match mode {
            Mode::Proper => n.max(1),
            Mode::Injective => 1,
            Mode::MBounded | Mode::StronglyMBounded => n.div_ceil(k),
        };
        let (large_size, large_allow) = if mode == Mode::StronglyMBounded {
            (n / k + 1, n % k)
        } else {
            (usize::MAX, 0)
        };
        Ctx {
            order,
            lists,
            earlier,
            suffix_start,
            m_cap,
            large_size,
            large_allow,
            hall_prune: opts.hall_prune,
        }
    }

    fn n(&self) -> usize {
        self.order.len()
    }
}

struct SearchState {
    assigned: Vec<usize>, // color per position, UNDEF when free
    class_count: Vec<usize>,
    large_used: usize,
    nodes: u64,
}

enum Goal {
    FirstWitness,
    CountAll(u64),
}

fn search(ctx: &Ctx, st: &mut SearchState, i: usize, goal: &mut Goal) -> Option<Coloring> {
    if i == ctx.n() {
        match goal {
            Goal::FirstWitness => {
                let mut f = Coloring::new(ctx.n());
                for (p, &v) in ctx.order.iter().enumerate() {
                    f.set(v, st.assigned[p]);
                }
                return Some(f);
            }
            Goal::CountAll(c) => {
                *c += 1;
                return None;
            }
        }
    }
    if matches!(goal, Goal::FirstWitness) && ctx.hall_prune && !hall_feasible(ctx, st, i) {
        return None;
    }
    let list = &ctx.lists[i];
    for &c in list {
        let blocked = ctx.earlier[i]
            .iter()
            .any(|(j, table)| table[st.assigned[*j]] == c);
        if blocked {
            continue;
        }
        let new_size = st.class_count[c] + 1;
        if new_size > ctx.m_cap {
            continue;
        }
        let becomes_large = new_size == ctx.large_size;
        if becomes_large && st.large_used == ctx.large_allow {
            continue;
        }
        st.assigned[i] = c;
        st.class_count[c] = new_size;
        if becomes_large {
            st.large_used += 1;
        }
        st.nodes += 1;
        let found = search(ctx, st, i + 1, goal);
        if becomes_large {
            st.large_used -= 1;
        }
        st.class_count[c] = new_size - 1;
        st.assigned[i] = UNDEF;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Hall-style feasibility of the uncolored independent suffix: each suffix
/// vertex needs an unblocked listed color with remaining class capacity, and
/// the colors must serve all of them simultaneously. Capacities are relaxed
/// to the per-class cap, which keeps the prune sound for every mode.
fn hall_feasible(ctx: &Ctx, st: &SearchState, i: usize) -> bool {
    let start = ctx.suffix_start.max(i);
    let t = ctx.n() - start;
    if t < 2 {
        return true;
    }
    let palette = st.class_count.len();
    let cap: Vec<usize> = (0..palette)
        .map(|c| ctx.m_cap.saturating_sub(st.class_count[c]).min(t))
        .collect();
    // Availability per suffix vertex under current blocks and caps.
    let mut avail: Vec<Vec<Color>> = Vec::with_capacity(t);
    for p in start..ctx.n() {
        let colors: Vec<Color> = ctx.lists[p]
            .iter()
            .copied()
            .filter(|&c| {
                cap[c] > 0
                    && !ctx.earlier[p]
                        .iter()
                        .any(|(j, table)| *j < i && table[st.assigned[*j]] == c)
            })
            .collect();
        if colors.is_empty() {
            return false;
        }
        avail.push(colors);
    }
    // b-matching of suffix vertices into color capacities via augmentation.
    let mut matched: Vec<Vec<usize>> = vec![Vec::new(); palette]; // color -> left nodes
    for w in 0..t {
        let mut visited = vec![false; palette];
        if !augment(w, &avail, &cap, &mut matched, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(
    w: usize,
    avail: &[Vec<Color>],
    cap: &[usize],
    matched: &mut Vec<Vec<usize>>,
    visited: &mut [bool],
) -> bool {
    for &c in &avail[w] {
        if visited[c] {
            continue;
        }
        visited[c] = true;
        if matched[c].len() < cap[c] {
            matched[c].push(w);
            return true;
        }
        for idx in 0..matched[c].len() {
            let holder = matched[c][idx];
            if augment(holder, avail, cap, matched, visited) {
                matched[c][idx] = w;
                return true;
            }
        }
    }
    false
}

/// Complete search for an H-coloring in the compiled vertex order, class
/// budgets propagated, Hall prune on. Returns the first witness in
/// lexicographic (order, color) position or UNSAT after exhaustion.
pub fn solve(h: &Cover, mode: Mode, k: usize) -> Verdict {
    solve_with(h, mode, k, SolveOptions::default())
}

pub fn solve_with(h: &Cover, mode: Mode, k: usize, opts: SolveOptions) -> Verdict {
    assert!(k >= 1, "k must be positive");
    let ctx = Ctx::new(h, mode, k, opts);
    let mut st = SearchState {
        assigned: vec![UNDEF; ctx.n()],
        class_count: vec![0; h.palette()],
        large_used: 0,
        nodes: 0,
    };
    let mut goal = Goal::FirstWitness;
    let witness = search(&ctx, &mut st, 0, &mut goal);
    if let Some(f) = &witness {
        let report = check_coloring(h, f, mode, k).expect("witness is total");
        assert!(
            report.ok(),
            "solver produced a witness failing its own check: {:?}",
            report.violations
        );
    }
    Verdict {
        satisfiable: witness.is_some(),
        witness,
        nodes_explored: st.nodes,
    }
}

/// Exact number of total colorings satisfying the mode. Intended for small
/// instances; enumeration is budget-pruned but otherwise complete.
pub fn count_colorings(h: &Cover, mode: Mode, k: usize) -> u64 {
    assert!(k >= 1);
    let ctx = Ctx::new(h, mode, k, SolveOptions { hall_prune: false });
    let mut st = SearchState {
        assigned: vec![UNDEF; ctx.n()],
        class_count: vec![0; h.palette()],
        large_used: 0,
        nodes: 0,
    };
    let mut goal = Goal::CountAll(0);
    search(&ctx, &mut st, 0, &mut goal);
    match goal {
        Goal::CountAll(c) => c,
        Goal::FirstWitness => unreachable!(),
    }
}

/// System-of-distinct-representatives search: an injective choice from the
/// given sets, via Kuhn's augmenting paths. Sets are scanned in order and
/// colors ascending, so the result is deterministic.
pub(crate) fn sdr(sets: &[Vec<Color>]) -> Option<Vec<Color>> {
    use std::collections::BTreeMap;

    fn try_assign(
        w: usize,
        sets: &[Vec<Color>],
        owner: &mut BTreeMap<Color, usize>,
        visited: &mut BTreeSet<Color>,
    ) -> bool {
        for &c in &sets[w] {
            if visited.contains(&c) {
                continue;
            }
            visited.insert(c);
            match owner.get(&c).copied() {
                None => {
                    owner.insert(c, w);
                    return true;
                }
                Some(holder) => {
                    if try_assign(holder, sets, owner, visited) {
                        owner.insert(c, w);
                        return true;
                    }
                }
            }
        }
        false
    }

    let mut owner: BTreeMap<Color, usize> = BTreeMap::new();
    for w in 0..sets.len() {
        let mut visited = BTreeSet::new();
        if !try_assign(w, sets, &mut owner, &mut visited) {
            return None;
        }
    }
    let mut choice = vec![0; sets.len()];
    for (c, w) in owner {
        choice[w] = c;
    }
    Some(choice)
}

/// Injective extension on an independent set: if the availability sets of
/// `s` admit a system of distinct representatives, returns `f` extended on
/// `s`; otherwise `None`.
pub fn hall_extend(h: &Cover, f: &Coloring, s: &[Vertex]) -> Result<Option<Coloring>> {
    let g = h.graph();
    for (i, &u) in s.iter().enumerate() {
        if f.get(u).is_some() {
            return Err(Error::pre(format!("vertex {u} is already colored")));
        }
        for &v in &s[i + 1..] {
            if g.has_edge(u, v) {
                return Err(Error::pre(format!(
                    "set is not independent: edge ({u}, {v})"
                )));
            }
        }
    }
    let sets: Vec<Vec<Color>> = s
        .iter()
        .map(|&v| h.availability(f, v).available.into_iter().collect())
        .collect();
    Ok(sdr(&sets).map(|colors| {
        let mut out = f.clone();
        for (&v, c) in s.iter().zip(colors) {
            out.set(v, c);
        }
        out
    }))
}

/// Exact class profile of a total coloring.
pub fn class_profile(f: &Coloring, k: usize) -> Result<ClassProfile> {
    if let Some(v) = f.first_unassigned() {
        return Err(Error::PartialColoring(v));
    }
    Ok(ClassProfile::of(f, k))
}
