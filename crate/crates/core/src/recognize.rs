//! K4-minor-freeness and the structural configuration that drives the
//! constructive colorer.

use std::collections::BTreeSet;

use crate::blocks::block_decomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Series-parallel reduction on each block: delete vertices with at most
/// one neighbor and suppress vertices with exactly two, merging parallel
/// edges. A graph is K4-minor-free exactly when every block reduces away.
pub fn is_k4_minor_free(g: &Graph) -> bool {
    if g.n() < 4 {
        return true;
    }
    let components = components(g);
    components.iter().all(|comp| {
        let (sub, _) = g.induced_subgraph(comp);
        match block_decomposition(&sub) {
            Ok(d) => d.blocks.iter().all(|b| b.len() < 4 || reduces_away(&sub.induced_subgraph(b).0)),
            Err(_) => false,
        }
    })
}

fn components(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in g.neighbors(comp[i]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn reduces_away(block: &Graph) -> bool {
    let mut adj: Vec<BTreeSet<Vertex>> =
        block.vertices().map(|v| block.neighbors(v).iter().copied().collect()).collect();
    let mut alive = block.n();
    let mut queue: Vec<Vertex> = block.vertices().collect();
    let mut removed = vec![false; block.n()];
    while let Some(v) = queue.pop() {
        if removed[v] || adj[v].len() > 2 {
            continue;
        }
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[v].clear();
        removed[v] = true;
        alive -= 1;
        queue.extend(nbrs);
    }
    alive == 0
}

/// Which case of the K4-minor-free structure trichotomy applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureLocator {
    /// A vertex of degree at most one.
    MinDegreeLeqOne(Vertex),
    /// Two adjacent 2-vertices `(u, v)` with `u < v`.
    AdjacentTwoVertices(Vertex, Vertex),
    HubVertex(Hub),
}

/// A vertex `u` of degree at least 3 whose `T(u)` has at most two members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hub {
    pub u: Vertex,
    pub t_set: BTreeSet<Vertex>,
    /// Degree-2 neighbors of `u`.
    pub q_set: BTreeSet<Vertex>,
    /// Both members of `T(u)` exist and are adjacent.
    pub t_adjacent: bool,
    pub selection_satisfied: bool,
}

impl Hub {
    pub fn of(g: &Graph, u: Vertex) -> Hub {
        let t_set = g.t_set_unchecked(u);
        let q_set = g.neighbors(u).iter().copied().filter(|&z| g.degree(z) == 2).collect();
        let t: Vec<Vertex> = t_set.iter().copied().collect();
        let t_adjacent = t.len() == 2 && g.has_edge(t[0], t[1]);
        let selection_satisfied = g.degree(u) >= 3 && selection_holds(g, u);
        Hub { u, t_set, q_set, t_adjacent, selection_satisfied }
    }

    /// Recomputes the locator fields from `g` and checks them.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.u < g.n() && g.degree(self.u) >= 3 && self.t_set.len() <= 2 && *self == Hub::of(g, self.u)
    }
}

/// Condition of the vertex-selection claim for a vertex `v` with
/// `T(v) = {v1, v2}`: if `v1 ~ v2` one of them has `t ∈ {2, 3}`, otherwise
/// one of them has `t = 2`.
pub fn selection_holds(g: &Graph, v: Vertex) -> bool {
    let t: Vec<Vertex> = g.t_set_unchecked(v).into_iter().collect();
    if t.len() != 2 {
        return false;
    }
    let (t1, t2) = (g.t_set_unchecked(t[0]).len(), g.t_set_unchecked(t[1]).len());
    if g.has_edge(t[0], t[1]) {
        (2..=3).contains(&t1) || (2..=3).contains(&t2)
    } else {
        t1 == 2 || t2 == 2
    }
}

/// Vertices of degree ≥ 3 with `t = 2` that satisfy the selection claim.
pub fn selection_vertices(g: &Graph) -> Vec<Vertex> {
    g.vertices().filter(|&v| g.degree(v) >= 3 && selection_holds(g, v)).collect()
}

/// Lexicographically smallest pair of adjacent 2-vertices.
pub fn adjacent_two_vertices(g: &Graph) -> Option<(Vertex, Vertex)> {
    g.edges().find(|&(u, v)| g.degree(u) == 2 && g.degree(v) == 2)
}

/// Locates the applicable configuration, breaking ties by smallest id.
/// Among hubs, `t ≤ 1` comes first, then hubs satisfying the selection
/// claim, then any remaining hub.
pub fn find_structure(g: &Graph) -> Result<StructureLocator> {
    if g.n() < 2 {
        return Err(Error::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !is_k4_minor_free(g) {
        return Err(Error::NotK4MinorFree);
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 1) {
        return Ok(StructureLocator::MinDegreeLeqOne(v));
    }
    if let Some((u, v)) = adjacent_two_vertices(g) {
        return Ok(StructureLocator::AdjacentTwoVertices(u, v));
    }
    let hubs: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 3 && g.t_set_unchecked(v).len() <= 2).collect();
    let pick = hubs
        .iter()
        .find(|&&v| g.t_set_unchecked(v).len() <= 1)
        .or_else(|| hubs.iter().find(|&&v| selection_holds(g, v)))
        .or_else(|| hubs.first());
    match pick {
        Some(&u) => Ok(StructureLocator::HubVertex(Hub::of(g, u))),
        None => Err(Error::Precondition("no vertex of the K4-minor-free trichotomy found".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_examples() {
        assert!(!is_k4_minor_free(&Graph::complete(4)));
        assert!(is_k4_minor_free(&Graph::complete_bipartite(2, 3)));
        assert!(is_k4_minor_free(&Graph::path(7)));
        assert!(is_k4_minor_free(&Graph::cycle(7)));
        assert!(is_k4_minor_free(&Graph::star(5)));
        // Subdivided K4 still has a K4 minor.
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (4, 2), (1, 3), (2, 5), (5, 3)]).unwrap();
        assert!(!is_k4_minor_free(&g));
        assert!(!is_k4_minor_free(&Graph::complete_bipartite(3, 3)));
    }

    #[test]
    fn structure_examples() {
        assert!(matches!(find_structure(&Graph::path(3)).unwrap(), StructureLocator::MinDegreeLeqOne(0)));
        assert_eq!(find_structure(&Graph::cycle(5)).unwrap(), StructureLocator::AdjacentTwoVertices(0, 1));
        assert_eq!(find_structure(&Graph::complete(4)), Err(Error::NotK4MinorFree));
    }

    #[test]
    fn hub_on_doubled_triangle() {
        // Hubs 0,1,2, each pair joined by two private 2-vertices.
        let g = Graph::from_edges(
            9,
            &[(0, 3), (3, 1), (0, 4), (4, 1), (1, 5), (5, 2), (1, 6), (6, 2), (0, 7), (7, 2), (0, 8), (8, 2)],
        )
        .unwrap();
        assert!(is_k4_minor_free(&g));
        match find_structure(&g).unwrap() {
            StructureLocator::HubVertex(h) => {
                assert!(h.is_valid_for(&g));
                assert_eq!(h.u, 0);
                assert_eq!(h.t_set, BTreeSet::from([1, 2]));
                assert_eq!(h.q_set, BTreeSet::from([3, 4, 7, 8]));
                assert!(!h.t_adjacent && h.selection_satisfied);
            }
            other => panic!("expected hub, got {other:?}"),
        }
    }
}
