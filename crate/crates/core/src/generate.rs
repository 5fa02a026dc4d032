//! Seeded random graph families and exhaustive enumeration of small graphs
//! up to isomorphism.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocks::{block_decomposition, is_two_connected};
use crate::graph::{Graph, Vertex};
use crate::recognize::{adjacent_two_vertices, is_k4_minor_free};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A connected K4-minor-free graph on at most `size_budget` vertices built
/// from `K2` by random subdivisions, parallel paths of length two, pendant
/// trees and connectivity-preserving edge deletions.
pub fn generate_sp_graph(seed: u64, size_budget: usize) -> Graph {
    let budget = size_budget.max(2);
    let mut r = rng(seed);
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::from([(0, 1)]);
    let mut n = 2;
    let norm = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
    while n < budget {
        let list: Vec<(Vertex, Vertex)> = edges.iter().copied().collect();
        let &(a, b) = list.choose(&mut r).expect("graph has an edge");
        match r.gen_range(0..10) {
            0..=2 => {
                edges.remove(&(a, b));
                edges.insert(norm(a, n));
                edges.insert(norm(n, b));
                n += 1;
            }
            3..=5 => {
                edges.insert(norm(a, n));
                edges.insert(norm(b, n));
                n += 1;
            }
            6..=7 => {
                let v = r.gen_range(0..n);
                edges.insert((v, n));
                n += 1;
            }
            _ => {
                let mut without = edges.clone();
                without.remove(&(a, b));
                if Graph::from_edges_lossy(n, without.iter().copied()).is_connected() {
                    edges = without;
                }
            }
        }
    }
    Graph::from_edges_lossy(n, edges)
}

/// A random connected graph: a random spanning tree plus each other pair
/// with probability `p`.
pub fn random_connected_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut r = rng(seed);
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges_lossy(n, edges)
}

/// A random connected graph on `3..=max_n` vertices with at least one cut
/// vertex.
pub fn random_graph_with_cut_vertex(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    loop {
        let n = r.gen_range(3..=max_n.max(3));
        let p = r.gen_range(0.1..0.7);
        let g = random_connected_graph(r.gen(), n, p);
        if block_decomposition(&g).map(|d| !d.cut_vertices.is_empty()).unwrap_or(false) {
            return g;
        }
    }
}

/// A random 2-connected graph on `4..=max_n` vertices that has two adjacent
/// 2-vertices: a random 2-connected core with one edge replaced by a path
/// through two new vertices.
pub fn random_two_connected_with_adjacent_two_vertices(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    let max_n = max_n.max(5);
    loop {
        let core = r.gen_range(3..=max_n - 2);
        let mut order: Vec<Vertex> = (0..core).collect();
        order.shuffle(&mut r);
        let mut edges: Vec<(Vertex, Vertex)> = (0..core).map(|i| (order[i], order[(i + 1) % core])).collect();
        let p = r.gen_range(0.0..0.6);
        for a in 0..core {
            for b in a + 1..core {
                if r.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        let base = Graph::from_edges_lossy(core, edges);
        let all: Vec<(Vertex, Vertex)> = base.edges().collect();
        let &(a, b) = all.choose(&mut r).expect("cycle has edges");
        let mut rest: Vec<(Vertex, Vertex)> = all.into_iter().filter(|&e| e != (a, b)).collect();
        rest.extend([(a, core), (core, core + 1), (core + 1, b)]);
        let g = Graph::from_edges_lossy(core + 2, rest);
        if is_two_connected(&g) && adjacent_two_vertices(&g).is_some() {
            return g;
        }
    }
}

/// Canonical labeling by individualization and refinement. Two graphs are
/// isomorphic exactly when their forms are equal.
pub fn canonical_form(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= 64, "canonical form supports at most 64 vertices");
    let mut best: Option<Vec<u64>> = None;
    let cells = refine(g, vec![g.vertices().collect()]);
    search(g, cells, &mut best);
    let mut out = vec![g.n() as u64];
    out.extend(best.unwrap_or_default());
    out
}

fn refine(g: &Graph, mut cells: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    loop {
        let mut cell_of = vec![0; g.n()];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let sig = |v: Vertex| {
                let mut s = vec![0usize; cells.len()];
                for &w in g.neighbors(v) {
                    s[cell_of[w]] += 1;
                }
                s
            };
            let mut keyed: Vec<(Vec<usize>, Vertex)> = cell.iter().map(|&v| (sig(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn twins(g: &Graph, a: Vertex, b: Vertex) -> bool {
    let na: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&w| w != b).collect();
    let nb: Vec<Vertex> = g.neighbors(b).iter().copied().filter(|&w| w != a).collect();
    na == nb
}

fn search(g: &Graph, cells: Vec<Vec<Vertex>>, best: &mut Option<Vec<u64>>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let mut label = vec![0; g.n()];
        for (i, c) in cells.iter().enumerate() {
            label[c[0]] = i;
        }
        let mut rows = vec![0u64; g.n()];
        for v in g.vertices() {
            for &w in g.neighbors(v) {
                rows[label[v]] |= 1 << label[w];
            }
        }
        if best.as_ref().is_none_or(|b| rows < *b) {
            *best = Some(rows);
        }
        return;
    };
    // Swapping twins is an automorphism fixing everything individualized
    // so far, so one representative per twin class suffices.
    let mut tried: Vec<Vertex> = Vec::new();
    for &v in &cells[target] {
        if tried.iter().any(|&t| twins(g, t, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<Vertex> = next[target].iter().copied().filter(|&w| w != v).collect();
        next[target] = vec![v];
        next.insert(target + 1, rest);
        search(g, refine(g, next), best);
    }
}

/// Extends each graph by one vertex joined to every nonempty subset
/// (or, for trees, to a single vertex), keeping one graph per isomorphism
/// class that passes `keep`.
fn extend_level(level: &[Graph], trees_only: bool, keep: &dyn Fn(&Graph) -> bool) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in level {
        let n = g.n();
        let subsets: Box<dyn Iterator<Item = u64>> =
            if trees_only { Box::new((0..n).map(|v| 1u64 << v)) } else { Box::new(1..(1u64 << n)) };
        for mask in subsets {
            let extra: Vec<(Vertex, Vertex)> = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| (v, n)).collect();
            let h = g.with_new_vertices(1, &extra);
            if !keep(&h) {
                continue;
            }
            if seen.insert(canonical_form(&h)) {
                out.push(h);
            }
        }
    }
    out
}

fn levels(max_n: usize, trees_only: bool, keep: &dyn Fn(&Graph) -> bool) -> Vec<Vec<Graph>> {
    let mut all = vec![Vec::new(), vec![Graph::empty(1)]];
    for _ in 2..=max_n {
        let next = extend_level(all.last().unwrap(), trees_only, keep);
        all.push(next);
    }
    all.truncate(max_n + 1);
    all
}

/// Non-isomorphic trees on `n` vertices, `1 ≤ n ≤ 12`.
pub fn all_trees(n: usize) -> Vec<Graph> {
    levels(n, true, &|_| true).pop().unwrap_or_default()
}

/// Non-isomorphic connected graphs on `n` vertices.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    levels(n, false, &|_| true).pop().unwrap_or_default()
}

/// Non-isomorphic connected K4-minor-free graphs on `n` vertices. Every such
/// graph arises from a smaller one by adding a vertex, since deleting a
/// non-cut vertex keeps it connected and K4-minor-free.
pub fn all_connected_k4mf_graphs(n: usize) -> Vec<Graph> {
    levels(n, false, &is_k4_minor_free).pop().unwrap_or_default()
}

/// As [`all_connected_k4mf_graphs`] for every order `2..=max_n`.
pub fn connected_k4mf_graphs_upto(max_n: usize) -> Vec<Graph> {
    levels(max_n, false, &is_k4_minor_free).into_iter().skip(2).flatten().collect()
}

/// As [`all_connected_graphs`] for every order `2..=max_n`.
pub fn connected_graphs_upto(max_n: usize) -> Vec<Graph> {
    levels(max_n, false, &|_| true).into_iter().skip(2).flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp_generator_examples() {
        assert_eq!(generate_sp_graph(1, 2), Graph::complete(2));
        for seed in 0..50 {
            let g = generate_sp_graph(seed, 5 + seed as usize % 30);
            assert!(g.is_connected());
            assert!(is_k4_minor_free(&g));
            assert!(g.n() <= 5 + seed as usize % 30);
            assert_eq!(g, generate_sp_graph(seed, 5 + seed as usize % 30));
        }
    }

    #[test]
    fn known_counts() {
        let trees: Vec<usize> = (1..=10).map(|n| all_trees(n).len()).collect();
        assert_eq!(trees, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        let connected: Vec<usize> = (1..=6).map(|n| all_connected_graphs(n).len()).collect();
        assert_eq!(connected, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let h = Graph::from_edges(5, &[(4, 3), (3, 2), (2, 1), (1, 0), (0, 4), (4, 2)]).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&h));
        assert_ne!(canonical_form(&g), canonical_form(&Graph::cycle(5)));
    }

    #[test]
    fn random_families_have_their_properties() {
        for seed in 0..30 {
            let g = random_graph_with_cut_vertex(seed, 9);
            assert!(g.is_connected() && g.n() <= 9);
            assert!(!block_decomposition(&g).unwrap().cut_vertices.is_empty());
            let h = random_two_connected_with_adjacent_two_vertices(seed, 9);
            assert!(is_two_connected(&h) && h.n() <= 9);
            assert!(adjacent_two_vertices(&h).is_some());
        }
    }
}
