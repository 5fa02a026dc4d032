//! Simple undirected graphs, vertex colorings and the text formats used to
//! exchange them.
//!
//! Vertices are dense indices `0..n` internally. Every text format (edge
//! lists, coloring files, DOT labels) uses 1-based ids, so vertex `v` is
//! written as `v + 1`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = u32;

/// A simple, finite, undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Builds a graph from an explicit edge list, rejecting self-loops,
    /// duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut sets = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v) + 1, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u + 1));
            }
            if !sets[u].insert(v) {
                return Err(Error::DuplicateEdge(u.min(v) + 1, u.max(v) + 1));
            }
            sets[v].insert(u);
        }
        Ok(Graph::from_sets(sets))
    }

    /// Builds a graph from neighbor sets. Self-loops are dropped and the
    /// relation is symmetrized, so callers may add each edge from one side.
    pub(crate) fn from_sets(mut sets: Vec<BTreeSet<Vertex>>) -> Graph {
        let n = sets.len();
        for u in 0..n {
            sets[u].remove(&u);
            let nbrs: Vec<Vertex> = sets[u].iter().copied().collect();
            for v in nbrs {
                sets[v].insert(u);
            }
        }
        let adj: Vec<Vec<Vertex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edge_count }
    }

    /// Like [`Graph::from_edges`] but silently collapses duplicate edges and
    /// drops self-loops.
    pub fn from_edges_lossy(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
        let mut sets = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u != v {
                sets[u].insert(v);
                sets[v].insert(u);
            }
        }
        Graph::from_sets(sets)
    }

    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], edge_count: 0 }
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges_lossy(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edges_lossy(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges_lossy(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// `K_{a,b}` with the `a` side on vertices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges_lossy(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::complete_bipartite(1, leaves)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v + 1, n: self.n() })
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m() + 1 == self.n() && self.is_connected()
    }

    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.adj.iter().all(|a| a.len() == 2) && self.is_connected()
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// A proper 2-coloring as sides `false`/`true`, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for start in self.vertices() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    /// Subgraph induced on `keep`, renumbered in the order given.
    /// Returns the graph and, for each new index, the original vertex.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut sets = vec![BTreeSet::new(); keep.len()];
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if new_id[w] != usize::MAX {
                    sets[i].insert(new_id[w]);
                }
            }
        }
        (Graph::from_sets(sets), keep.to_vec())
    }

    /// The graph with `remove` deleted, remaining vertices kept in order.
    pub fn without_vertices(&self, remove: &BTreeSet<Vertex>) -> (Graph, Vec<Vertex>) {
        let keep: Vec<Vertex> = self.vertices().filter(|v| !remove.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Copy of the graph with `extra` edges added (existing ones ignored).
    pub fn with_edges(&self, extra: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_edges_lossy(self.n(), self.edges().chain(extra.iter().copied()))
    }

    /// Copy of the graph with `count` fresh vertices appended after the
    /// existing ones, plus the given edges.
    pub fn with_new_vertices(&self, count: usize, extra: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_edges_lossy(self.n() + count, self.edges().chain(extra.iter().copied()))
    }

    /// `N(x) ∩ N(y)`.
    pub fn common_neighbors(&self, x: Vertex, y: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.common_neighbors_unchecked(x, y))
    }

    pub(crate) fn common_neighbors_unchecked(&self, x: Vertex, y: Vertex) -> BTreeSet<Vertex> {
        let (a, b) = (&self.adj[x], &self.adj[y]);
        let (mut i, mut j) = (0, 0);
        let mut out = BTreeSet::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.insert(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// 2-vertices adjacent to both `x` and `y`.
    pub fn m_set(&self, x: Vertex, y: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.m_set_unchecked(x, y))
    }

    pub(crate) fn m_set_unchecked(&self, x: Vertex, y: Vertex) -> BTreeSet<Vertex> {
        let mut s = self.common_neighbors_unchecked(x, y);
        s.retain(|&z| self.degree(z) == 2);
        s
    }

    /// Vertices of degree at least 3 that are adjacent to `u` or reachable
    /// from `u` through a single 2-vertex.
    pub fn t_set(&self, u: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check_vertex(u)?;
        Ok(self.t_set_unchecked(u))
    }

    pub(crate) fn t_set_unchecked(&self, u: Vertex) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        for &z in &self.adj[u] {
            if self.degree(z) >= 3 {
                out.insert(z);
            } else if self.degree(z) == 2 {
                for &x in &self.adj[z] {
                    if x != u && self.degree(x) >= 3 {
                        out.insert(x);
                    }
                }
            }
        }
        out
    }

    /// Contracts the edge `uv`: `v` is merged into `u`, parallel edges
    /// collapse and the loop disappears. Returns the contracted graph and the
    /// old-to-new vertex map (`v` maps to the image of `u`).
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<(Graph, Vec<Vertex>)> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u + 1, v + 1));
        }
        let shift = |w: Vertex| if w > v { w - 1 } else { w };
        let mut map: Vec<Vertex> = self.vertices().map(shift).collect();
        map[v] = shift(u);
        let edges = self.edges().map(|(a, b)| (map[a], map[b]));
        Ok((Graph::from_edges_lossy(self.n() - 1, edges), map))
    }

    /// Graph on the same vertices joining every pair with at least two
    /// common neighbors. Any rainbow vertex-disconnection coloring is proper
    /// on it.
    pub fn conflict_graph(&self) -> Graph {
        self.pair_graph(2)
    }

    /// Graph joining every pair that shares at least one neighbor; proper
    /// colorings of it are exactly the injective colorings.
    pub fn shared_neighbor_graph(&self) -> Graph {
        self.pair_graph(1)
    }

    fn pair_graph(&self, threshold: usize) -> Graph {
        let n = self.n();
        let mut counts = vec![0usize; n * n];
        for z in self.vertices() {
            let nb = &self.adj[z];
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    counts[a * n + b] += 1;
                }
            }
        }
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if counts[a * n + b] >= threshold {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges_lossy(n, edges)
    }

    /// Parses the edge-list format: a header `n m` followed by `m` lines
    /// `u v` with 1-based ids. Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| Error::Parse { line: 1, msg: "missing header".into() })?;
        let [n, m] = parse_pair(hline, header)?;
        if n == 0 {
            return Err(Error::Parse { line: hline, msg: "graph needs at least one vertex".into() });
        }
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let [u, v] = parse_pair(line, l)?;
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v).max(1), n });
            }
            edges.push((u - 1, v - 1));
        }
        if edges.len() != m {
            return Err(Error::EdgeCountMismatch { declared: m, found: edges.len() });
        }
        Graph::from_edges(n, &edges)
    }

    /// Writes the edge-list format read by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }

    /// Graphviz export; when a coloring is supplied each vertex is labeled
    /// `id:color`.
    pub fn to_dot(&self, coloring: Option<&VertexColoring>) -> String {
        let mut out = String::from("graph G {\n");
        for v in self.vertices() {
            match coloring {
                Some(c) => {
                    let _ = writeln!(
                        out,
                        "  {} [label=\"{}:{}\", colorscheme=set312, style=filled, fillcolor={}];",
                        v + 1,
                        v + 1,
                        c.get(v),
                        (c.get(v) - 1) % 12 + 1
                    );
                }
                None => {
                    let _ = writeln!(out, "  {};", v + 1);
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", u + 1, v + 1);
        }
        out.push_str("}\n");
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse { line, msg: format!("expected two integers, got {text:?}") })?
            .parse::<usize>()
            .map_err(|e| Error::Parse { line, msg: e.to_string() })
    };
    let pair = [next()?, next()?];
    if it.next().is_some() {
        return Err(Error::Parse { line, msg: format!("trailing tokens in {text:?}") });
    }
    Ok(pair)
}

/// Total map from vertices to positive color ids.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexColoring {
    colors: Vec<Color>,
}

impl VertexColoring {
    pub fn new(colors: Vec<Color>) -> Result<VertexColoring> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::InvalidColor { vertex: v + 1 });
        }
        Ok(VertexColoring { colors })
    }

    pub fn uniform(n: usize) -> VertexColoring {
        VertexColoring { colors: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    pub fn palette(&self) -> BTreeSet<Color> {
        self.colors.iter().copied().collect()
    }

    pub fn palette_size(&self) -> usize {
        self.palette().len()
    }

    pub fn with(&self, v: Vertex, c: Color) -> VertexColoring {
        let mut colors = self.colors.clone();
        colors[v] = c;
        VertexColoring { colors }
    }

    /// Relabels colors to `1..=k` in order of first appearance.
    pub fn normalized(&self) -> VertexColoring {
        let mut map = std::collections::HashMap::new();
        let colors = self
            .colors
            .iter()
            .map(|c| {
                let next = map.len() as Color + 1;
                *map.entry(*c).or_insert(next)
            })
            .collect();
        VertexColoring { colors }
    }

    pub fn is_proper_on(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    pub(crate) fn check_total(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::ColoringSize { expected: g.n(), found: self.len() });
        }
        Ok(())
    }

    /// Parses the coloring format: one `v c` line per vertex, any order.
    pub fn parse(text: &str, n: usize) -> Result<VertexColoring> {
        let mut colors: Vec<Option<Color>> = vec![None; n];
        for (i, raw) in text.lines().enumerate() {
            let l = raw.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let [v, c] = parse_pair(i + 1, l)?;
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v.max(1), n });
            }
            if c == 0 {
                return Err(Error::InvalidColor { vertex: v });
            }
            if colors[v - 1].replace(c as Color).is_some() {
                return Err(Error::Parse { line: i + 1, msg: format!("vertex {v} colored twice") });
            }
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or(Error::Uncolored(v + 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexColoring { colors })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.colors.iter().enumerate() {
            let _ = writeln!(out, "{} {}", v + 1, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    #[test]
    fn parses_small_graphs() {
        let k3 = Graph::parse_edge_list("3 3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(Graph::parse_edge_list("2 1\n1 2").unwrap(), Graph::complete(2));
        assert_eq!(Graph::parse_edge_list("4 3\n1 2\n2 3\n3 4").unwrap(), Graph::path(4));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Graph::parse_edge_list("3 1\n1 x"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse_edge_list("3 1\n1 4"), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(Graph::parse_edge_list("3 1\n2 2"), Err(Error::SelfLoop(2))));
        assert!(matches!(Graph::parse_edge_list("3 2\n1 2\n2 1"), Err(Error::DuplicateEdge(1, 2))));
        assert!(matches!(Graph::parse_edge_list("3 3\n1 2\n2 3"), Err(Error::EdgeCountMismatch { .. })));
        assert!(Graph::parse_edge_list("").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::complete_bipartite(2, 3);
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn common_neighbor_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(k23.common_neighbors(0, 1).unwrap(), set(&[2, 3, 4]));
        assert!(Graph::path(4).common_neighbors(0, 3).unwrap().is_empty());
        assert_eq!(Graph::cycle(4).common_neighbors(0, 2).unwrap(), set(&[1, 3]));
        assert!(k23.common_neighbors(0, 9).is_err());
    }

    #[test]
    fn m_set_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(k23.m_set(0, 1).unwrap(), set(&[2, 3, 4]));
        assert!(Graph::complete(4).m_set(0, 1).unwrap().is_empty());
        // Hubs 0,1 joined by 2-vertices 3,4; a third hub 2 hangs off both
        // through 2-vertices 5..8 so that 0 and 1 have degree 4.
        let g = Graph::from_edges(
            9,
            &[(0, 3), (1, 3), (0, 4), (1, 4), (0, 5), (5, 2), (0, 6), (6, 2), (1, 7), (7, 2), (1, 8), (8, 2)],
        )
        .unwrap();
        assert_eq!(g.m_set(0, 1).unwrap(), set(&[3, 4]));
    }

    #[test]
    fn t_set_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(k23.t_set(0).unwrap(), set(&[1]));
        assert!(Graph::star(4).t_set(0).unwrap().is_empty());
        assert_eq!(Graph::complete(4).t_set(0).unwrap(), set(&[1, 2, 3]));
    }

    #[test]
    fn contraction_examples() {
        let (g, _) = Graph::complete(3).contract_edge(0, 1).unwrap();
        assert_eq!(g, Graph::complete(2));
        let (g, map) = Graph::cycle(4).contract_edge(1, 2).unwrap();
        assert_eq!(g, Graph::cycle(3));
        assert_eq!(map, vec![0, 1, 1, 2]);
        let (g, _) = Graph::path(4).contract_edge(1, 2).unwrap();
        assert_eq!(g, Graph::path(3));
        assert!(matches!(Graph::path(4).contract_edge(0, 2), Err(Error::MissingEdge(1, 3))));
    }

    #[test]
    fn conflict_graph_examples() {
        let c = Graph::complete_bipartite(2, 3).conflict_graph();
        assert_eq!(c, Graph::from_edges(5, &[(0, 1), (2, 3), (2, 4), (3, 4)]).unwrap());
        assert_eq!(Graph::path(6).conflict_graph().m(), 0);
        assert_eq!(Graph::cycle(4).conflict_graph(), Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap());
    }

    #[test]
    fn coloring_format() {
        let c = VertexColoring::parse("2 1\n1 3\n3 3\n", 3).unwrap();
        assert_eq!(c.as_slice(), &[3, 1, 3]);
        assert_eq!(c.palette_size(), 2);
        assert_eq!(VertexColoring::parse(&c.to_text(), 3).unwrap(), c);
        assert!(matches!(VertexColoring::parse("1 1\n", 2), Err(Error::Uncolored(2))));
        assert!(VertexColoring::parse("1 1\n1 2\n", 1).is_err());
        assert!(VertexColoring::parse("1 0\n", 1).is_err());
        assert_eq!(c.normalized().as_slice(), &[1, 2, 1]);
    }

    #[test]
    fn dot_export_mentions_every_edge() {
        let g = Graph::cycle(4);
        let dot = g.to_dot(Some(&VertexColoring::new(vec![1, 1, 2, 2]).unwrap()));
        assert!(dot.contains("1 -- 2;") && dot.contains("1 -- 4;"));
        assert!(dot.contains("label=\"3:2\""));
    }
}
