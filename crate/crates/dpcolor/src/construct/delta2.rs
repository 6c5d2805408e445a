//! Strongly equitable coloring of arbitrary graphs with k ≥ 3Δ² colors.
//! The graph is peeled k vertices at a time: a block X containing an
//! independent set X₀ of size Δ together with its whole neighborhood X₁ is
//! split off, the rest is colored recursively, and the block is colored
//! injectively by a loop that maintains three invariants — every color
//! blocked at an uncolored X₀ vertex is already used on X, every color used
//! on X₀ is blocked at or absent from every uncolored X₂ vertex, and a
//! counting inequality tying the uncolored block sizes together. The
//! invariants are re-checked after every single extension; a violation
//! aborts the run.

use std::collections::BTreeSet;

use crate::cover::{Coloring, Cover};
use crate::graph::{degeneracy_ordering, independent_set};
use crate::solver::{check_coloring, solve, Mode};
use crate::{Color, Error, Result, Vertex};

use super::color_ge_n_plus_d;

/// A completed run: the coloring plus the number of invariant checks that
/// passed along the way.
#[derive(Debug, Clone)]
pub struct Delta2Run {
    pub coloring: Coloring,
    pub invariant_checks: u64,
}

/// Strongly m-bounded coloring for k ≥ 3Δ(G)².
pub fn sedp_delta_squared(h: &Cover, k: usize) -> Result<Delta2Run> {
    let g = h.graph();
    let delta = g.max_degree();
    if k < 3 * delta * delta || k < 1 {
        return Err(Error::pre(format!(
            "need k >= 3*Delta^2 and k >= 1: k = {k}, Delta = {delta}"
        )));
    }
    if !h.is_k_cover() || h.k() != k {
        return Err(Error::pre("cover is not a k-cover for the requested k"));
    }
    let mut checks = 0u64;
    let coloring = rec(h, k, &mut checks)?;
    let report = check_coloring(h, &coloring, Mode::StronglyMBounded, k)?;
    if !report.ok() {
        return Err(Error::invariant(format!(
            "block recursion returned a non-SE coloring: {:?}",
            report.violations
        )));
    }
    Ok(Delta2Run {
        coloring,
        invariant_checks: checks,
    })
}

fn rec(h: &Cover, k: usize, checks: &mut u64) -> Result<Coloring> {
    let g = h.graph();
    let n = g.n();
    if n == 0 {
        return Ok(Coloring::new(0));
    }
    if n <= k {
        // Injective base. First-fit is guaranteed with n + d colors; the
        // oracle covers the thin margin n <= k < n + d.
        let d = degeneracy_ordering(g).degeneracy;
        return if k >= n + d {
            color_ge_n_plus_d(h)
        } else {
            solve(h, Mode::Injective, k).witness.ok_or_else(|| {
                Error::TheoremViolation(format!(
                    "no injective coloring on an {n}-vertex base with k = {k} >= 3*Delta^2"
                ))
            })
        };
    }

    let delta = g.max_degree();
    let x0 = independent_set(g, delta)?;
    let mut x1: BTreeSet<Vertex> = BTreeSet::new();
    for &v in &x0 {
        x1.extend(g.neighbors(v).iter().copied());
    }
    debug_assert!(x0.iter().all(|v| !x1.contains(v)));
    let mut x: BTreeSet<Vertex> = x0.iter().copied().collect();
    x.extend(x1.iter().copied());
    debug_assert!(x.len() <= k);
    for v in g.vertices() {
        if x.len() == k {
            break;
        }
        x.insert(v);
    }
    let block: Vec<Vertex> = x.iter().copied().collect();
    let rest: Vec<Vertex> = g.vertices().filter(|v| !x.contains(v)).collect();

    let sub = h.restrict(&rest);
    let f0 = rec(&sub, k, checks)?.lift(&rest, n);

    let mut ext = Ext::new(h, k, delta, f0, &x0, &x1, &block);
    ext.check_invariants(checks)?;
    ext.run(checks)?;
    Ok(ext.f)
}

/// Block membership tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    Core,    // X0: the independent seed
    Fringe,  // X1: its neighborhood
    Padding, // X2: the rest of the block
    Outside,
}

/// The promising-coloring loop state over original vertex indices.
struct Ext<'a> {
    h: &'a Cover,
    delta: usize,
    part: Vec<Part>,
    block: Vec<Vertex>,
    f: Coloring,
    /// Colors used on the block so far (the coloring is injective there).
    used_on_block: BTreeSet<Color>,
}

impl<'a> Ext<'a> {
    fn new(
        h: &'a Cover,
        _k: usize,
        delta: usize,
        f0: Coloring,
        x0: &[Vertex],
        x1: &BTreeSet<Vertex>,
        block: &[Vertex],
    ) -> Ext<'a> {
        let n = h.graph().n();
        let mut part = vec![Part::Outside; n];
        for &v in block {
            part[v] = Part::Padding;
        }
        for &v in x1 {
            part[v] = Part::Fringe;
        }
        for &v in x0 {
            part[v] = Part::Core;
        }
        Ext {
            h,
            delta,
            part,
            block: block.to_vec(),
            f: f0,
            used_on_block: BTreeSet::new(),
        }
    }

    fn uncolored(&self, p: Part) -> Vec<Vertex> {
        self.block
            .iter()
            .copied()
            .filter(|&v| self.part[v] == p && self.f.get(v).is_none())
            .collect()
    }

    fn colored_core_colors(&self) -> BTreeSet<Color> {
        self.block
            .iter()
            .filter(|&&v| self.part[v] == Part::Core)
            .filter_map(|&v| self.f.get(v))
            .collect()
    }

    fn blocked(&self, v: Vertex) -> BTreeSet<Color> {
        let mut out = BTreeSet::new();
        for &w in self.h.graph().neighbors(v) {
            if let Some(c) = self.f.get(w) {
                if let Some(b) = self.h.image(w, v, c) {
                    out.insert(b);
                }
            }
        }
        out
    }

    /// List minus blocked minus used-on-block, ascending.
    fn avail(&self, v: Vertex) -> Vec<Color> {
        let blocked = self.blocked(v);
        self.h
            .list(v)
            .iter()
            .copied()
            .filter(|c| !blocked.contains(c) && !self.used_on_block.contains(c))
            .collect()
    }

    fn assign(&mut self, v: Vertex, c: Color) {
        debug_assert!(self.part[v] != Part::Outside);
        debug_assert!(self.f.get(v).is_none());
        debug_assert!(!self.used_on_block.contains(&c));
        self.f.set(v, c);
        self.used_on_block.insert(c);
    }

    /// The three loop invariants, checked from scratch. Signed arithmetic:
    /// the counting inequality has a (Δ−2) coefficient that goes negative
    /// for small Δ.
    fn check_invariants(&self, checks: &mut u64) -> Result<()> {
        let g = self.h.graph();
        let core_colors = self.colored_core_colors();
        // (A) every blocked color at an uncolored core vertex is used on X.
        for v in self.uncolored(Part::Core) {
            for b in self.blocked(v) {
                if !self.used_on_block.contains(&b) {
                    return Err(Error::invariant(format!(
                        "invariant A: color {b} blocked at core vertex {v} but unused on the block"
                    )));
                }
            }
        }
        // (B) every color used on the core is blocked at or absent from
        // every uncolored padding vertex.
        for z in self.uncolored(Part::Padding) {
            let blocked = self.blocked(z);
            for &c in &core_colors {
                if self.h.list(z).contains(&c) && !blocked.contains(&c) {
                    return Err(Error::invariant(format!(
                        "invariant B: core color {c} open at padding vertex {z}"
                    )));
                }
            }
        }
        // Counting: |uncolored X2| >= cross-edges + (Δ−2)·|uncolored X0| + Δ
        // whenever some X1 vertex is uncolored; in particular it stays >= Δ.
        let d0 = self.uncolored(Part::Core);
        let d1 = self.uncolored(Part::Fringe);
        let d2 = self.uncolored(Part::Padding);
        if !d1.is_empty() {
            let cross = d0
                .iter()
                .map(|&v| d1.iter().filter(|&&w| g.has_edge(v, w)).count())
                .sum::<usize>() as i64;
            let delta = self.delta as i64;
            let bound = cross + (delta - 2) * d0.len() as i64 + delta;
            if (d2.len() as i64) < bound {
                return Err(Error::invariant(format!(
                    "counting invariant: |uncolored padding| = {} < {bound}",
                    d2.len()
                )));
            }
            if (d2.len() as i64) < delta {
                return Err(Error::invariant(
                    "counting consequence: uncolored padding dropped below Delta",
                ));
            }
        }
        *checks += 1;
        Ok(())
    }

    fn run(&mut self, checks: &mut u64) -> Result<()> {
        loop {
            let d0 = self.uncolored(Part::Core);
            let d1 = self.uncolored(Part::Fringe);
            if d0.is_empty() && d1.is_empty() && self.uncolored(Part::Padding).is_empty() {
                return Ok(());
            }
            let g = self.h.graph();
            let crossing: Option<Vertex> = d1
                .iter()
                .copied()
                .find(|&y| d0.iter().any(|&x| g.has_edge(x, y)));
            match crossing {
                Some(y) => self.case_crossing(y, checks)?,
                None => return self.case_settled(checks),
            }
        }
    }

    /// A fringe vertex y with an uncolored core neighbor. Color y unless
    /// that would strand a core neighbor: every core neighbor whose blocked
    /// color is still open gets pre-paid by parking that color on a padding
    /// vertex away from y, and if one core neighbor cannot be paid for, it
    /// is colored now instead of y, followed by all padding neighbors of y.
    fn case_crossing(&mut self, y: Vertex, checks: &mut u64) -> Result<()> {
        let g = self.h.graph();
        let ay = self.avail(y);
        let Some(&beta) = ay.first() else {
            return Err(Error::invariant(format!(
                "no color available for fringe vertex {y}"
            )));
        };
        // Core neighbors whose view of beta must be paid for.
        let d0: BTreeSet<Vertex> = self.uncolored(Part::Core).into_iter().collect();
        let mut w: Vec<(Vertex, Color)> = Vec::new();
        for &x in g.neighbors(y) {
            if d0.contains(&x) {
                if let Some(alpha) = self.h.image(y, x, beta) {
                    if alpha != beta && self.avail(x).contains(&alpha) {
                        w.push((x, alpha));
                    }
                }
            }
        }
        let lambda: BTreeSet<Color> = w.iter().map(|&(_, a)| a).collect();
        let pool: Vec<Vertex> = self
            .uncolored(Part::Padding)
            .into_iter()
            .filter(|&z| !g.has_edge(y, z))
            .collect();
        let (lambda0, iota) = self.max_injection(&lambda, &pool);
        for &(z, c) in &iota {
            self.assign(z, c);
            self.check_invariants(checks)?;
        }
        let stranded: Vec<(Vertex, Color)> = w
            .iter()
            .copied()
            .filter(|(_, a)| !lambda0.contains(a))
            .collect();
        if stranded.is_empty() {
            debug_assert!(self.avail(y).contains(&beta));
            self.assign(y, beta);
            self.check_invariants(checks)?;
        } else {
            let (x, alpha) = stranded[0];
            debug_assert!(self.avail(x).contains(&alpha));
            self.assign(x, alpha);
            self.check_invariants(checks)?;
            // Close off the padding neighborhood of y so the core-color
            // barrier stays intact.
            let zprime = {
                let mut zp: Vec<Vertex> = self
                    .uncolored(Part::Padding)
                    .into_iter()
                    .filter(|&z| g.has_edge(y, z))
                    .collect();
                zp.sort_unstable();
                zp
            };
            for z in zprime {
                let a = self.avail(z);
                let d1n = self.uncolored(Part::Fringe).len();
                let d2n = self.uncolored(Part::Padding).len();
                if a.len() < d1n + d2n {
                    return Err(Error::invariant(format!(
                        "padding fill at {z}: {} colors available, {} required",
                        a.len(),
                        d1n + d2n
                    )));
                }
                let c = a[0];
                self.assign(z, c);
                self.check_invariants(checks)?;
            }
        }
        Ok(())
    }

    /// No crossing edges remain: color the fringe, then the padding, then
    /// the core, greedily; the invariants supply the counting bounds.
    fn case_settled(&mut self, checks: &mut u64) -> Result<()> {
        for y in self.uncolored(Part::Fringe) {
            let a = self.avail(y);
            let Some(&c) = a.first() else {
                return Err(Error::invariant(format!(
                    "no color available for fringe vertex {y} in the settled case"
                )));
            };
            self.assign(y, c);
            self.check_invariants(checks)?;
        }
        for z in self.uncolored(Part::Padding) {
            let a = self.avail(z);
            let d2n = self.uncolored(Part::Padding).len();
            if a.len() < d2n {
                return Err(Error::invariant(format!(
                    "padding vertex {z}: {} colors available, {} required",
                    a.len(),
                    d2n
                )));
            }
            self.assign(z, a[0]);
            self.check_invariants(checks)?;
        }
        for x in self.uncolored(Part::Core) {
            let a = self.avail(x);
            let d0n = self.uncolored(Part::Core).len();
            if a.len() < d0n {
                return Err(Error::invariant(format!(
                    "core vertex {x}: {} colors available, {} required",
                    a.len(),
                    d0n
                )));
            }
            self.assign(x, a[0]);
            self.check_invariants(checks)?;
        }
        Ok(())
    }

    /// Maximum subset of `lambda` that can be parked injectively on the
    /// pool so that the combined coloring stays proper: subsets are tried
    /// largest first in lexicographic order, assignments scan the pool
    /// ascending, and candidate pairs are validated against both the
    /// colored graph and the pairs already parked.
    fn max_injection(
        &self,
        lambda: &BTreeSet<Color>,
        pool: &[Vertex],
    ) -> (BTreeSet<Color>, Vec<(Vertex, Color)>) {
        let colors: Vec<Color> = lambda.iter().copied().collect();
        let m = colors.len();
        for size in (0..=m).rev() {
            for subset in subsets_of_size(&colors, size) {
                if let Some(assignment) = self.park(&subset, pool, &mut Vec::new()) {
                    return (subset.into_iter().collect(), assignment);
                }
            }
            if size == 0 {
                break;
            }
        }
        (BTreeSet::new(), Vec::new())
    }

    fn park(
        &self,
        colors: &[Color],
        pool: &[Vertex],
        taken: &mut Vec<(Vertex, Color)>,
    ) -> Option<Vec<(Vertex, Color)>> {
        let Some((&c, rest)) = colors.split_first() else {
            return Some(taken.clone());
        };
        let g = self.h.graph();
        'cand: for &z in pool {
            if taken.iter().any(|&(t, _)| t == z) {
                continue;
            }
            if !self.h.list(z).contains(&c)
                || self.used_on_block.contains(&c)
                || self.blocked(z).contains(&c)
            {
                continue;
            }
            for &(z2, c2) in taken.iter() {
                if g.has_edge(z, z2) && self.h.image(z2, z, c2) == Some(c) {
                    continue 'cand;
                }
            }
            taken.push((z, c));
            if let Some(done) = self.park(rest, pool, taken) {
                return Some(done);
            }
            taken.pop();
        }
        None
    }
}

/// All size-r subsets of a sorted slice, in lexicographic order.
fn subsets_of_size(items: &[Color], r: usize) -> Vec<Vec<Color>> {
    fn rec(items: &[Color], r: usize, start: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, r, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Matching;
    use crate::graph::Graph;

    #[test]
    fn union_of_paths_gets_the_flat_profile() {
        // Four disjoint copies of P_6: Delta = 2, n = 24, k = 12.
        let mut g = Graph::path(6);
        for _ in 0..3 {
            g = g.disjoint_union(&Graph::path(6));
        }
        let h = Cover::plain_normal(g, 12);
        let run = sedp_delta_squared(&h, 12).unwrap();
        let rep = check_coloring(&h, &run.coloring, Mode::StronglyMBounded, 12).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.profile.size_multiset(), vec![2; 12]);
        assert!(run.invariant_checks > 0);
    }

    #[test]
    fn cycles_with_a_twisted_cover() {
        // Three disjoint 5-cycles under a rotating matching.
        let mut g = Graph::cycle(5);
        for _ in 0..2 {
            g = g.disjoint_union(&Graph::cycle(5));
        }
        let rot = Matching::from_cycles(12, &[&(0..12).collect::<Vec<_>>()]);
        let h = Cover::plain_with(g, 12, move |u, _| {
            if u % 2 == 0 {
                rot.clone()
            } else {
                rot.inverse()
            }
        });
        let run = sedp_delta_squared(&h, 12).unwrap();
        assert!(check_coloring(&h, &run.coloring, Mode::StronglyMBounded, 12)
            .unwrap()
            .ok());
    }

    #[test]
    fn small_inputs_reduce_to_the_injective_base() {
        let h = Cover::plain_normal(Graph::cycle(4), 12);
        let run = sedp_delta_squared(&h, 12).unwrap();
        assert!(run.coloring.is_injective());
    }

    #[test]
    fn budget_below_three_delta_squared_is_rejected() {
        let h = Cover::plain_normal(Graph::cycle(5), 11);
        assert!(matches!(
            sedp_delta_squared(&h, 11),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn edgeless_graphs_round_robin() {
        let h = Cover::plain_normal(Graph::empty(7), 3);
        let run = sedp_delta_squared(&h, 3).unwrap();
        let rep = check_coloring(&h, &run.coloring, Mode::StronglyMBounded, 3).unwrap();
        assert!(rep.ok());
    }
}
