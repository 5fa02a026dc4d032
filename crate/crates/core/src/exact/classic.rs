//! Exact chromatic-type parameters by branch and bound.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Color, Graph, Vertex, VertexColoring};

/// Largest `n·k` accepted by the k-fold solver unless overridden.
pub const DEFAULT_KFOLD_CAP: KfoldCap = KfoldCap { max_n: 7, max_k: 3 };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KfoldCap {
    pub max_n: usize,
    pub max_k: usize,
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<Color>,
    nodes: u64,
}

impl Dsatur<'_> {
    fn saturation(&self, v: Vertex) -> usize {
        let mut seen = BTreeSet::new();
        for &w in self.g.neighbors(v) {
            if self.colors[w] != 0 {
                seen.insert(self.colors[w]);
            }
        }
        seen.len()
    }

    fn pick(&self) -> Option<Vertex> {
        self.g
            .vertices()
            .filter(|&v| self.colors[v] == 0)
            .max_by_key(|&v| (self.saturation(v), self.g.degree(v), std::cmp::Reverse(v)))
    }

    fn solve(&mut self, max_used: Color) -> bool {
        self.nodes += 1;
        let Some(v) = self.pick() else {
            return true;
        };
        let limit = (max_used + 1).min(self.k as Color);
        for c in 1..=limit {
            if self.g.neighbors(v).iter().any(|&w| self.colors[w] == c) {
                continue;
            }
            self.colors[v] = c;
            if self.solve(max_used.max(c)) {
                return true;
            }
        }
        self.colors[v] = 0;
        false
    }
}

/// A proper coloring with at most `k` colors, if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Option<VertexColoring> {
    if g.n() == 0 {
        return Some(VertexColoring::new(vec![]).unwrap());
    }
    if k == 0 {
        return None;
    }
    let mut s = Dsatur { g, k, colors: vec![0; g.n()], nodes: 0 };
    s.solve(0).then(|| VertexColoring::new(s.colors).unwrap())
}

fn greedy_clique(g: &Graph) -> usize {
    let mut best = usize::from(g.n() > 0);
    for start in g.vertices() {
        let mut clique = vec![start];
        let mut cands: Vec<Vertex> = g.neighbors(start).to_vec();
        cands.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        for v in cands {
            if clique.iter().all(|&c| g.has_edge(c, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// An optimal proper coloring.
pub fn optimal_coloring(g: &Graph) -> VertexColoring {
    let mut k = greedy_clique(g).max(1);
    loop {
        if let Some(c) = k_coloring(g, k) {
            return c;
        }
        k += 1;
    }
}

pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    optimal_coloring(g).palette_size()
}

/// Size of a largest independent set.
pub fn independence_number(g: &Graph) -> usize {
    fn rec(g: &Graph, alive: &mut Vec<bool>) -> usize {
        let live: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
        if live.is_empty() {
            return 0;
        }
        let deg = |v: Vertex| g.neighbors(v).iter().filter(|&&w| alive[w]).count();
        // A vertex of live degree <= 1 is always in some maximum set.
        if let Some(&v) = live.iter().find(|&&v| deg(v) <= 1) {
            let removed: Vec<Vertex> =
                std::iter::once(v).chain(g.neighbors(v).iter().copied().filter(|&w| alive[w])).collect();
            removed.iter().for_each(|&w| alive[w] = false);
            let r = 1 + rec(g, alive);
            removed.iter().for_each(|&w| alive[w] = true);
            return r;
        }
        let &v = live.iter().max_by_key(|&&v| deg(v)).unwrap();
        alive[v] = false;
        let without = rec(g, alive);
        let nbrs: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        nbrs.iter().for_each(|&w| alive[w] = false);
        let with = 1 + rec(g, alive);
        nbrs.iter().for_each(|&w| alive[w] = true);
        alive[v] = true;
        without.max(with)
    }
    rec(g, &mut vec![true; g.n()])
}

/// An optimal injective coloring: vertices sharing a neighbor get distinct
/// colors.
pub fn injective_coloring(g: &Graph) -> VertexColoring {
    optimal_coloring(&g.shared_neighbor_graph())
}

pub fn injective_chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    injective_coloring(g).palette_size()
}

/// `G[K_k]`: vertex `(v, i)` is `v * k + i`; copies of a vertex form a
/// clique and copies of adjacent vertices are fully joined.
fn blow_up(g: &Graph, k: usize) -> Graph {
    let mut edges = Vec::new();
    for v in g.vertices() {
        for i in 0..k {
            for j in i + 1..k {
                edges.push((v * k + i, v * k + j));
            }
        }
    }
    for (u, v) in g.edges() {
        for i in 0..k {
            for j in 0..k {
                edges.push((u * k + i, v * k + j));
            }
        }
    }
    Graph::from_edges_lossy(g.n() * k, edges)
}

/// Minimum palette for a k-fold coloring, with its color sets.
pub fn kfold_coloring(g: &Graph, k: usize, cap: KfoldCap) -> Result<Vec<BTreeSet<Color>>> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if g.n() > cap.max_n || k > cap.max_k {
        return Err(Error::CapExceeded(format!(
            "k-fold search limited to n <= {}, k <= {} (got n = {}, k = {k})",
            cap.max_n,
            cap.max_k,
            g.n()
        )));
    }
    let c = optimal_coloring(&blow_up(g, k));
    Ok(g.vertices().map(|v| (0..k).map(|i| c.get(v * k + i)).collect()).collect())
}

pub fn kfold_chromatic_number(g: &Graph, k: usize) -> Result<usize> {
    kfold_chromatic_number_with(g, k, DEFAULT_KFOLD_CAP)
}

pub fn kfold_chromatic_number_with(g: &Graph, k: usize, cap: KfoldCap) -> Result<usize> {
    let sets = kfold_coloring(g, k, cap)?;
    Ok(sets.iter().flatten().collect::<BTreeSet<_>>().len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&Graph::complete(3)), 3);
        assert_eq!(chromatic_number(&Graph::cycle(5)), 3);
        assert_eq!(chromatic_number(&Graph::complete_bipartite(2, 3)), 2);
        assert_eq!(chromatic_number(&Graph::empty(3)), 1);
        let c = optimal_coloring(&Graph::cycle(7));
        assert!(c.is_proper_on(&Graph::cycle(7)));
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_number(&Graph::complete(4)), 1);
        assert_eq!(independence_number(&Graph::cycle(5)), 2);
        assert_eq!(independence_number(&Graph::complete_bipartite(2, 3)), 3);
    }

    #[test]
    fn injective_examples() {
        assert_eq!(injective_chromatic_number(&Graph::star(4)), 4);
        assert_eq!(injective_chromatic_number(&Graph::path(3)), 2);
        assert_eq!(injective_chromatic_number(&Graph::cycle(4)), 2);
    }

    #[test]
    fn kfold_examples() {
        assert_eq!(kfold_chromatic_number(&Graph::complete(2), 2).unwrap(), 4);
        assert_eq!(kfold_chromatic_number(&Graph::cycle(5), 2).unwrap(), 5);
        for g in [Graph::cycle(5), Graph::complete(3), Graph::path(4)] {
            assert_eq!(kfold_chromatic_number(&g, 1).unwrap(), chromatic_number(&g));
        }
        assert!(matches!(kfold_chromatic_number(&Graph::path(8), 2), Err(Error::CapExceeded(_))));
        let sets = kfold_coloring(&Graph::cycle(5), 2, DEFAULT_KFOLD_CAP).unwrap();
        for (u, v) in Graph::cycle(5).edges() {
            assert!(sets[u].is_disjoint(&sets[v]));
        }
        assert!(sets.iter().all(|s| s.len() == 2));
    }
}
