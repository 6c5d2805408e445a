//! Permutations of a color palette and partial injections between lists,
//! with deterministic lexicographic enumeration and conjugacy-class
//! representatives. These feed the symmetry-reduced cover enumeration.

use crate::Color;

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// All permutations of 0..k as image arrays, in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::with_capacity(factorial(k) as usize);
    let mut cur: Vec<Color> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Standard next-permutation.
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    out
}

pub fn inverse(p: &[Color]) -> Vec<Color> {
    let mut out = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        out[y] = x;
    }
    out
}

/// Conjugation π σ π⁻¹ as image arrays.
pub fn conjugate(sigma: &[Color], pi: &[Color]) -> Vec<Color> {
    let mut out = vec![0; sigma.len()];
    for x in 0..sigma.len() {
        out[pi[x]] = pi[sigma[x]];
    }
    out
}

/// The lexicographically least member of each conjugacy class of S_k,
/// sorted. Classes correspond to cycle types, so there are p(k) of them.
pub fn conjugacy_representatives(k: usize) -> Vec<Vec<Color>> {
    let perms = all_permutations(k);
    let mut reps = Vec::new();
    for sigma in &perms {
        let canon = perms
            .iter()
            .map(|pi| conjugate(sigma, pi))
            .min()
            .unwrap();
        if canon == *sigma {
            reps.push(sigma.clone());
        }
    }
    reps.sort();
    reps
}

/// Number of partial injections from a k-set into a k-set:
/// Σ_i C(k,i)² · i!.
pub fn partial_injection_count(k: usize) -> u128 {
    let mut total = 0u128;
    for i in 0..=k {
        let c = binomial(k, i);
        total += c * c * factorial(i);
    }
    total
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut out = 1u128;
    for i in 0..r {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// All partial injections on source/target position sets of size k, encoded
/// as `map[source_pos] = Option<target_pos>`, in lexicographic order with
/// `None` before any `Some`.
pub fn all_partial_injections(k: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    let mut cur: Vec<Option<usize>> = vec![None; k];
    let mut used = vec![false; k];
    fn rec(
        pos: usize,
        k: usize,
        cur: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if pos == k {
            out.push(cur.clone());
            return;
        }
        cur[pos] = None;
        rec(pos + 1, k, cur, used, out);
        for t in 0..k {
            if !used[t] {
                used[t] = true;
                cur[pos] = Some(t);
                rec(pos + 1, k, cur, used, out);
                used[t] = false;
            }
        }
        cur[pos] = None;
    }
    rec(0, k, &mut cur, &mut used, &mut out);
    out
}
