//! Exact rainbow vertex-disconnection numbers.
//!
//! Each block is solved on its own and the answer is the maximum over
//! blocks. Inside a block, colorings are enumerated as restricted-growth
//! strings for `k = lower..upper`, pruned by the conflict graph and by
//! re-checking pairs that killed earlier candidates with every unassigned
//! vertex given a private color (refining a coloring never breaks a
//! rainbow cut, so a pair that fails there fails in every completion).

use std::time::{Duration, Instant};

use crate::blocks::{block_decomposition, BlockDecomposition};
use crate::error::{Error, Result};
use crate::exact::classic::{chromatic_number, injective_coloring};
use crate::graph::{Color, Graph, Vertex, VertexColoring};
use crate::verify::{bit, first_failing_pair, BitGraph, Checker, Mask};

pub const DEFAULT_CAP: usize = 12;

#[derive(Clone, Debug)]
pub struct ExactConfig {
    /// Largest block (or whole graph, without decomposition) accepted.
    pub cap: usize,
    /// Solve blocks separately; disabled only to cross-check the block law.
    pub use_blocks: bool,
    pub jobs: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig { cap: DEFAULT_CAP, use_blocks: true, jobs: 1 }
    }
}

impl ExactConfig {
    pub fn with_cap(cap: usize) -> Self {
        ExactConfig { cap, ..Default::default() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactStats {
    pub nodes: u64,
    pub elapsed: Duration,
    pub blocks: usize,
}

/// How the value `value − 1` was ruled out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `value` is 1, nothing to rule out.
    Trivial,
    /// The search over `value − 1` colors was exhausted.
    Exhausted,
    /// `value` meets the conflict-graph chromatic number.
    ConflictBound,
    /// `value` meets the minimum degree of a 2-connected block.
    MinDegreeBound,
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub value: usize,
    pub witness: VertexColoring,
    pub certificate: Certificate,
    pub stats: ExactStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub min_degree: usize,
    pub conflict_chromatic: usize,
    pub injective_chromatic: usize,
    /// Largest per-block lower bound, reported when the graph has cut
    /// vertices.
    pub block_max_hint: Option<usize>,
    pub lower: usize,
    pub upper: usize,
}

fn check_input(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

struct BlockBounds {
    lower: usize,
    source: Certificate,
    upper: usize,
    injective: VertexColoring,
}

fn block_bounds(g: &Graph, two_connected: bool) -> BlockBounds {
    let conflict = chromatic_number(&g.conflict_graph());
    let min_deg = if two_connected { g.min_degree() } else { 0 };
    let injective = injective_coloring(g);
    let (lower, source) = if conflict <= 1 && min_deg <= 1 {
        (1, Certificate::Trivial)
    } else if min_deg > conflict {
        (min_deg, Certificate::MinDegreeBound)
    } else {
        (conflict, Certificate::ConflictBound)
    };
    BlockBounds { lower, source, upper: injective.palette_size(), injective }
}

/// Lower/upper bounds `max(δ, χ(conflict)) ≤ rvd ≤ χ_i`, with `δ` used only
/// for 2-connected graphs.
pub fn bounds(g: &Graph) -> Result<BoundsReport> {
    check_input(g)?;
    let decomposition = block_decomposition(g)?;
    let two_connected = decomposition.is_two_connected();
    let conflict_chromatic = chromatic_number(&g.conflict_graph());
    let injective_chromatic = chromatic_number(&g.shared_neighbor_graph());
    let min_degree = g.min_degree();
    let block_max_hint = (!decomposition.cut_vertices.is_empty()).then(|| {
        decomposition
            .blocks
            .iter()
            .map(|b| {
                let (sub, _) = g.induced_subgraph(b);
                let two = b.len() >= 3;
                let conflict = chromatic_number(&sub.conflict_graph());
                conflict.max(if two { sub.min_degree() } else { 1 })
            })
            .max()
            .unwrap_or(1)
    });
    let lower = conflict_chromatic.max(if two_connected { min_degree } else { 0 }).max(1);
    Ok(BoundsReport {
        min_degree,
        conflict_chromatic,
        injective_chromatic,
        block_max_hint,
        lower,
        upper: injective_chromatic,
    })
}

pub fn rvd_exact(g: &Graph) -> Result<ExactResult> {
    rvd_exact_with(g, &ExactConfig::default())
}

pub fn rvd_exact_with(g: &Graph, cfg: &ExactConfig) -> Result<ExactResult> {
    check_input(g)?;
    // No monotonic clock on wasm32-unknown-unknown.
    let start = (!cfg!(target_arch = "wasm32")).then(Instant::now);
    let decomposition = if cfg.use_blocks {
        block_decomposition(g)?
    } else {
        let two = g.n() >= 3 && block_decomposition(g)?.is_two_connected();
        // A single pseudo-block; `two` decides whether δ may be used.
        BlockDecomposition {
            blocks: vec![g.vertices().collect()],
            cut_vertices: if two { Default::default() } else { [0].into() },
        }
    };
    let largest = decomposition.blocks.iter().map(Vec::len).max().unwrap_or(0);
    if largest > cfg.cap {
        return Err(Error::CapExceeded(format!("block of {largest} vertices exceeds cap {}", cfg.cap)));
    }
    if largest > 64 {
        return Err(Error::CapExceeded("exact search handles blocks of at most 64 vertices".into()));
    }

    let whole_two_connected = !cfg.use_blocks && decomposition.cut_vertices.is_empty();
    let solve = |b: &Vec<Vertex>| -> BlockSolution {
        let (sub, map) = g.induced_subgraph(b);
        let two = if cfg.use_blocks { sub.n() >= 3 } else { whole_two_connected };
        let sol = solve_block(&sub, two);
        BlockSolution { map, ..sol }
    };
    let solutions = solve_blocks(&decomposition.blocks, cfg.jobs, &solve);

    let mut stats = ExactStats { blocks: solutions.len(), ..Default::default() };
    stats.nodes = solutions.iter().map(|s| s.nodes).sum();
    let best = solutions.iter().max_by_key(|s| s.value).expect("at least one block");
    let (value, certificate) = (best.value, best.certificate);
    let witness = assemble(g, &solutions);
    debug_assert_eq!(witness.palette_size(), value);
    if let Some((x, y)) = first_failing_pair(g, &witness)? {
        return Err(Error::NotRainbowDisconnected(x + 1, y + 1));
    }
    stats.elapsed = start.map_or(Duration::ZERO, |s| s.elapsed());
    Ok(ExactResult { value, witness, certificate, stats })
}

#[derive(Clone, Debug)]
struct BlockSolution {
    map: Vec<Vertex>,
    value: usize,
    coloring: VertexColoring,
    certificate: Certificate,
    nodes: u64,
}

#[cfg(feature = "parallel")]
fn solve_blocks<F>(blocks: &[Vec<Vertex>], jobs: usize, solve: &F) -> Vec<BlockSolution>
where
    F: Fn(&Vec<Vertex>) -> BlockSolution + Sync,
{
    use rayon::prelude::*;
    if jobs > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            return pool.install(|| blocks.par_iter().map(solve).collect());
        }
    }
    blocks.iter().map(solve).collect()
}

#[cfg(not(feature = "parallel"))]
fn solve_blocks<F>(blocks: &[Vec<Vertex>], _jobs: usize, solve: &F) -> Vec<BlockSolution>
where
    F: Fn(&Vec<Vertex>) -> BlockSolution,
{
    blocks.iter().map(solve).collect()
}

/// Glues block colorings along the block-cut tree. Each new block meets
/// the colored part in exactly one cut vertex; its palette is permuted by a
/// transposition so that vertex keeps its color.
fn assemble(g: &Graph, solutions: &[BlockSolution]) -> VertexColoring {
    let mut colors: Vec<Color> = vec![0; g.n()];
    let mut done = vec![false; solutions.len()];
    for _ in 0..solutions.len() {
        let next = (0..solutions.len()).find(|&i| {
            !done[i] && (colors.iter().all(|&c| c == 0) || solutions[i].map.iter().any(|&v| colors[v] != 0))
        });
        let Some(i) = next else { break };
        done[i] = true;
        let sol = &solutions[i];
        let anchor = sol.map.iter().position(|&v| colors[v] != 0);
        let swap = anchor.map(|a| (sol.coloring.get(a), colors[sol.map[a]]));
        for (local, &v) in sol.map.iter().enumerate() {
            let mut c = sol.coloring.get(local);
            if let Some((from, to)) = swap {
                if c == from {
                    c = to;
                } else if c == to {
                    c = from;
                }
            }
            if colors[v] == 0 {
                colors[v] = c;
            }
        }
    }
    VertexColoring::new(colors).expect("every vertex lies in a block")
}

fn solve_block(g: &Graph, two_connected: bool) -> BlockSolution {
    let n = g.n();
    if n <= 2 {
        return BlockSolution {
            map: vec![],
            value: 1,
            coloring: VertexColoring::uniform(n),
            certificate: Certificate::Trivial,
            nodes: 0,
        };
    }
    let b = block_bounds(g, two_connected);
    assert!(b.lower <= b.upper, "lower bound {} above injective bound {}", b.lower, b.upper);
    let mut search = Search::new(g);
    for k in b.lower..b.upper {
        if let Some(c) = search.run(k) {
            let certificate = if k == b.lower { b.source } else { Certificate::Exhausted };
            return BlockSolution { map: vec![], value: k, coloring: c, certificate, nodes: search.nodes };
        }
    }
    let certificate = if b.upper == b.lower { b.source } else { Certificate::Exhausted };
    BlockSolution { map: vec![], value: b.upper, coloring: b.injective, certificate, nodes: search.nodes }
}

/// Colorings of one block with at most `k` colors, searched in
/// restricted-growth order.
struct Search<'g> {
    bg: BitGraph,
    conflict: Vec<Mask>,
    order: Vec<Vertex>,
    colors: Vec<Color>,
    killers: Vec<(Vertex, Vertex)>,
    nodes: u64,
    k: usize,
    _g: &'g Graph,
}

const MAX_KILLERS: usize = 12;

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Search<'g> {
        let bg = BitGraph::new(g).expect("caller enforces the size cap");
        let cg = g.conflict_graph();
        let conflict: Vec<Mask> = cg.vertices().map(|v| cg.neighbors(v).iter().fold(0, |m, &w| m | bit(w))).collect();
        Search {
            order: vertex_order(g, &cg),
            bg,
            conflict,
            colors: vec![0; g.n()],
            killers: Vec::new(),
            nodes: 0,
            k: 0,
            _g: g,
        }
    }

    fn run(&mut self, k: usize) -> Option<VertexColoring> {
        self.k = k;
        self.colors.iter_mut().for_each(|c| *c = 0);
        if self.rec(0, 0) {
            Some(VertexColoring::new(self.colors.clone()).unwrap())
        } else {
            None
        }
    }

    fn wildcard_bits(&self) -> Vec<Mask> {
        let k = self.k;
        self.colors.iter().enumerate().map(|(v, &c)| if c == 0 { bit(k + v) } else { bit(c as usize - 1) }).collect()
    }

    fn killers_pass(&self) -> bool {
        if self.killers.is_empty() {
            return true;
        }
        let checker = Checker::from_color_bits(&self.bg, self.wildcard_bits());
        self.killers.iter().all(|&(x, y)| checker.pair_ok(x, y))
    }

    fn remember(&mut self, pair: (Vertex, Vertex)) {
        if let Some(i) = self.killers.iter().position(|&p| p == pair) {
            self.killers.remove(i);
        }
        self.killers.insert(0, pair);
        self.killers.truncate(MAX_KILLERS);
    }

    fn rec(&mut self, depth: usize, max_used: Color) -> bool {
        self.nodes += 1;
        if depth == self.order.len() {
            let checker = Checker::from_color_bits(&self.bg, self.wildcard_bits());
            return match checker.first_failing_pair() {
                None => true,
                Some(pair) => {
                    self.remember(pair);
                    false
                }
            };
        }
        let v = self.order[depth];
        let limit = (max_used + 1).min(self.k as Color);
        for c in 1..=limit {
            let clash = crate::verify::bits(self.conflict[v]).any(|w| self.colors[w] == c);
            if clash {
                continue;
            }
            self.colors[v] = c;
            if self.killers_pass() && self.rec(depth + 1, max_used.max(c)) {
                return true;
            }
        }
        self.colors[v] = 0;
        false
    }
}

/// Static order: start from the vertex with most conflicts, then keep
/// taking the vertex with most already-ordered conflict neighbors (graph
/// neighbors, then degree, then id break ties).
fn vertex_order(g: &Graph, cg: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let cp = cg.neighbors(v).iter().filter(|&&w| placed[w]).count();
                let gp = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (cp, gp, cg.degree(v), g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[v] = true;
        order.push(v);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_coloring;

    #[test]
    fn trees_need_one_color() {
        for g in [Graph::path(2), Graph::path(6), Graph::star(5)] {
            let r = rvd_exact(&g).unwrap();
            assert_eq!(r.value, 1);
            assert!(verify_coloring(&g, &r.witness).unwrap().verdict);
        }
    }

    #[test]
    fn cycles_need_two() {
        for n in 3..=10 {
            let r = rvd_exact(&Graph::cycle(n)).unwrap();
            assert_eq!(r.value, 2, "C{n}");
            assert_eq!(r.witness.palette_size(), 2);
        }
    }

    #[test]
    fn k2t_needs_t() {
        for t in 2..=6 {
            assert_eq!(rvd_exact(&Graph::complete_bipartite(2, t)).unwrap().value, t);
        }
    }

    #[test]
    fn complete_graphs() {
        // For n >= 4 every pair forces the other n - 2 vertices to be rainbow.
        let expected = [(2, 1), (3, 2), (4, 4), (5, 5), (6, 6)];
        for (n, want) in expected {
            assert_eq!(rvd_exact(&Graph::complete(n)).unwrap().value, want, "K{n}");
        }
    }

    #[test]
    fn bounds_examples() {
        let b = bounds(&Graph::complete_bipartite(2, 3)).unwrap();
        assert_eq!((b.conflict_chromatic, b.injective_chromatic, b.lower, b.upper), (3, 3, 3, 3));
        assert_eq!(bounds(&Graph::path(5)).unwrap().lower, 1);
        let c5 = bounds(&Graph::cycle(5)).unwrap();
        assert_eq!(c5.lower, 2);
        assert!(c5.upper >= 2);
    }

    #[test]
    fn cap_and_input_errors() {
        assert!(matches!(rvd_exact(&Graph::cycle(13)), Err(Error::CapExceeded(_))));
        assert_eq!(rvd_exact(&Graph::empty(3)).unwrap_err(), Error::Disconnected);
        assert_eq!(rvd_exact(&Graph::empty(1)).unwrap_err(), Error::TooSmall(2));
        // Blocks are what the cap measures.
        assert_eq!(rvd_exact(&Graph::path(20)).unwrap().value, 1);
    }

    #[test]
    fn block_law_on_bowtie_with_tail() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 3), (5, 6)]).unwrap();
        let a = rvd_exact(&g).unwrap();
        let b = rvd_exact_with(&g, &ExactConfig { use_blocks: false, ..Default::default() }).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.value, 2);
    }
}
