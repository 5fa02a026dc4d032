//! Biconnected components (blocks) and cut vertices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, each sorted, blocks in discovery order.
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: BTreeSet<Vertex>,
}

impl BlockDecomposition {
    pub fn is_two_connected(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].len() >= 3
    }
}

/// Hopcroft-Tarjan block decomposition of a connected graph.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n == 1 {
        return Ok(BlockDecomposition { blocks: vec![vec![0]], cut_vertices: BTreeSet::new() });
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks = Vec::new();
    let mut cut_vertices = BTreeSet::new();

    // Iterative DFS: (vertex, parent, next neighbor index, child count).
    let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    let mut root_children = 0;
    while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
        if *idx < g.degree(u) {
            let w = g.neighbors(u)[*idx];
            *idx += 1;
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                edge_stack.push((u, w));
                if u == 0 {
                    root_children += 1;
                }
                stack.push((w, u, 0));
            } else if w != parent && disc[w] < disc[u] {
                edge_stack.push((u, w));
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent == usize::MAX {
                continue;
            }
            low[parent] = low[parent].min(low[u]);
            if low[u] >= disc[parent] {
                if parent != 0 {
                    cut_vertices.insert(parent);
                }
                let mut verts = BTreeSet::new();
                while let Some((a, b)) = edge_stack.pop() {
                    verts.insert(a);
                    verts.insert(b);
                    if (a, b) == (parent, u) {
                        break;
                    }
                }
                blocks.push(verts.into_iter().collect());
            }
        }
    }
    if root_children > 1 {
        cut_vertices.insert(0);
    }
    Ok(BlockDecomposition { blocks, cut_vertices })
}

pub fn is_two_connected(g: &Graph) -> bool {
    g.n() >= 3 && block_decomposition(g).map(|b| b.is_two_connected()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges_partition(g: &Graph, d: &BlockDecomposition) -> bool {
        g.edges().all(|(u, v)| {
            d.blocks.iter().filter(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok()).count() == 1
        })
    }

    #[test]
    fn bowtie() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = block_decomposition(&g).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cut_vertices, BTreeSet::from([2]));
        assert!(edges_partition(&g, &d));
    }

    #[test]
    fn path_blocks_are_bridges() {
        let g = Graph::path(4);
        let d = block_decomposition(&g).unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert!(d.blocks.iter().all(|b| b.len() == 2));
        assert_eq!(d.cut_vertices, BTreeSet::from([1, 2]));
    }

    #[test]
    fn cycle_is_one_block() {
        let d = block_decomposition(&Graph::cycle(5)).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1, 2, 3, 4]]);
        assert!(d.cut_vertices.is_empty());
        assert!(is_two_connected(&Graph::cycle(5)));
        assert!(!is_two_connected(&Graph::path(3)));
    }

    #[test]
    fn star_root_is_cut_vertex() {
        let d = block_decomposition(&Graph::star(3)).unwrap();
        assert_eq!(d.cut_vertices, BTreeSet::from([0]));
        assert_eq!(d.blocks.len(), 3);
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(block_decomposition(&Graph::empty(2)), Err(Error::Disconnected));
    }

    #[test]
    fn random_graphs_partition_edges() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..10);
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
            for _ in 0..rng.gen_range(0..n) {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                edges.push((a, b));
            }
            let g = Graph::from_edges_lossy(n, edges);
            let d = block_decomposition(&g).unwrap();
            assert!(edges_partition(&g, &d), "{g:?} {d:?}");
            for (i, a) in d.blocks.iter().enumerate() {
                for b in &d.blocks[i + 1..] {
                    let shared: Vec<_> = a.iter().filter(|v| b.contains(v)).collect();
                    assert!(shared.len() <= 1);
                    if let Some(v) = shared.first() {
                        assert!(d.cut_vertices.contains(v));
                    }
                }
            }
        }
    }
}
