//! Brute-force reference implementations. They share no code with the
//! solvers they check beyond the graph type itself, and are exponential by
//! design.

use std::collections::BTreeSet;

use crate::graph::{Color, Graph, Vertex, VertexColoring};

fn reaches(g: &Graph, removed: u64, x: Vertex, y: Vertex, drop_xy: bool) -> bool {
    let mut seen = removed | 1 << x;
    let mut stack = vec![x];
    while let Some(a) = stack.pop() {
        for &b in g.neighbors(a) {
            if drop_xy && ((a == x && b == y) || (a == y && b == x)) {
                continue;
            }
            if seen >> b & 1 == 0 {
                if b == y {
                    return true;
                }
                seen |= 1 << b;
                stack.push(b);
            }
        }
    }
    false
}

fn rainbow(c: &[Color], set: u64) -> bool {
    let mut seen = BTreeSet::new();
    (0..64).filter(|&v| set >> v & 1 == 1).all(|v| seen.insert(c[v]))
}

/// Does the pair have a rainbow vertex-cut? Tries every subset of the other
/// vertices.
pub fn naive_pair_ok(g: &Graph, c: &[Color], x: Vertex, y: Vertex) -> bool {
    let n = g.n();
    assert!(n <= 20, "naive oracle is limited to 20 vertices");
    let adjacent = g.has_edge(x, y);
    for s in 0u64..1 << n {
        if s >> x & 1 == 1 || s >> y & 1 == 1 {
            continue;
        }
        if reaches(g, s, x, y, adjacent) {
            continue;
        }
        let ok = if adjacent { rainbow(c, s | 1 << x) || rainbow(c, s | 1 << y) } else { rainbow(c, s) };
        if ok {
            return true;
        }
    }
    false
}

pub fn naive_is_rainbow_disconnected(g: &Graph, c: &[Color]) -> bool {
    (0..g.n()).all(|x| (x + 1..g.n()).all(|y| naive_pair_ok(g, c, x, y)))
}

/// Minimum palette over all `k^n` colorings, `n ≤ 7`.
pub fn naive_rvd(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 7, "naive rvd is limited to 7 vertices");
    for k in 1..=n.max(1) {
        let total = (k as u64).pow(n as u32);
        for code in 0..total {
            let mut c = vec![0 as Color; n];
            let mut rest = code;
            for slot in c.iter_mut() {
                *slot = (rest % k as u64) as Color + 1;
                rest /= k as u64;
            }
            if naive_is_rainbow_disconnected(g, &c) {
                return k;
            }
        }
    }
    n
}

/// Is there a K4 minor? Tries every assignment of vertices to four branch
/// sets (or none), with branch sets labeled in order of first appearance.
pub fn brute_has_k4_minor(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 10, "brute minor oracle is limited to 10 vertices");
    fn connected(g: &Graph, set: u64) -> bool {
        let start = set.trailing_zeros() as Vertex;
        let mut seen = 1u64 << start;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for &b in g.neighbors(a) {
                if set >> b & 1 == 1 && seen >> b & 1 == 0 {
                    seen |= 1 << b;
                    stack.push(b);
                }
            }
        }
        seen == set
    }
    fn rec(g: &Graph, v: Vertex, sets: &mut [u64; 4], used: usize) -> bool {
        if v == g.n() {
            if used < 4 || !sets.iter().all(|&s| connected(g, s)) {
                return false;
            }
            return (0..4).all(|i| {
                (i + 1..4).all(|j| {
                    (0..g.n()).any(|a| sets[i] >> a & 1 == 1 && g.neighbors(a).iter().any(|&b| sets[j] >> b & 1 == 1))
                })
            });
        }
        if rec(g, v + 1, sets, used) {
            return true;
        }
        for i in 0..(used + 1).min(4) {
            sets[i] |= 1 << v;
            let found = rec(g, v + 1, sets, used.max(i + 1));
            sets[i] &= !(1 << v);
            if found {
                return true;
            }
        }
        false
    }
    rec(g, 0, &mut [0; 4], 0)
}

/// Minimum palette of a k-fold coloring by backtracking over k-subsets.
pub fn brute_kfold(g: &Graph, k: usize) -> usize {
    fn subsets(p: usize, k: usize) -> Vec<u32> {
        (0u32..1 << p).filter(|s| s.count_ones() as usize == k).collect()
    }
    fn rec(g: &Graph, v: Vertex, sets: &mut Vec<u32>, options: &[u32]) -> bool {
        if v == g.n() {
            return true;
        }
        for &s in options {
            if g.neighbors(v).iter().filter(|&&w| w < v).all(|&w| sets[w] & s == 0) {
                sets.push(s);
                if rec(g, v + 1, sets, options) {
                    return true;
                }
                sets.pop();
            }
        }
        false
    }
    (k..).find(|&p| rec(g, 0, &mut Vec::new(), &subsets(p, k))).unwrap()
}

/// Whether `c` is proper on `g`.
pub fn naive_is_proper(g: &Graph, c: &VertexColoring) -> bool {
    g.edges().all(|(a, b)| c.get(a) != c.get(b))
}
