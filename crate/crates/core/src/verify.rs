//! Rainbow vertex-cut search and whole-coloring certification.
//!
//! For a pair `x, y` a witness is a set `S ⊆ V ∖ {x, y}` that separates the
//! pair (after deleting the edge `xy` when it exists) and is rainbow; for an
//! adjacent pair one endpoint must also be addable to `S` without repeating
//! a color.
//!
//! The search branches on the internal vertices of a shortest surviving
//! `x`-`y` path: every separator must hit that path, so branching over it is
//! complete. At most one vertex per color class can ever be chosen, which
//! bounds the depth by the number of colors.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Color, Graph, Vertex, VertexColoring};

pub type Mask = u128;

/// Largest graph the bitmask search handles.
pub const MAX_VERTICES: usize = 128;

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1u128 << v
}

pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub(crate) fn mask_of(vs: impl IntoIterator<Item = Vertex>) -> Mask {
    vs.into_iter().fold(0, |m, v| m | bit(v))
}

/// Adjacency bitmasks of a graph with at most [`MAX_VERTICES`] vertices.
#[derive(Clone, Debug)]
pub(crate) struct BitGraph {
    pub n: usize,
    pub adj: Vec<Mask>,
}

impl BitGraph {
    pub fn new(g: &Graph) -> Result<BitGraph> {
        if g.n() > MAX_VERTICES {
            return Err(Error::CapExceeded(format!(
                "{} vertices, the cut search handles at most {MAX_VERTICES}",
                g.n()
            )));
        }
        let adj = g.vertices().map(|v| mask_of(g.neighbors(v).iter().copied())).collect();
        Ok(BitGraph { n: g.n(), adj })
    }

    fn all(&self) -> Mask {
        if self.n == 128 {
            Mask::MAX
        } else {
            bit(self.n) - 1
        }
    }
}

/// Which endpoint joins the cut to form the rainbow set of an adjacent pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RainbowSide {
    None,
    X,
    Y,
}

/// Certificate that a pair has a rainbow vertex-cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWitness {
    pub x: Vertex,
    pub y: Vertex,
    pub adjacent: bool,
    pub cut: BTreeSet<Vertex>,
    pub rainbow_side: RainbowSide,
}

impl CutWitness {
    /// The rainbow superset: the cut plus the chosen endpoint.
    pub fn rainbow_set(&self) -> BTreeSet<Vertex> {
        let mut d = self.cut.clone();
        match self.rainbow_side {
            RainbowSide::X => {
                d.insert(self.x);
            }
            RainbowSide::Y => {
                d.insert(self.y);
            }
            RainbowSide::None => {}
        }
        d
    }

    /// Re-checks the witness with the plain list-based [`separates`] and the
    /// rainbow predicate, sharing nothing with the search.
    pub fn validate(&self, g: &Graph, c: &VertexColoring) -> bool {
        if self.x == self.y || self.cut.contains(&self.x) || self.cut.contains(&self.y) {
            return false;
        }
        if self.adjacent != g.has_edge(self.x, self.y) {
            return false;
        }
        if (self.rainbow_side == RainbowSide::None) == self.adjacent {
            return false;
        }
        is_rainbow(c, &self.rainbow_set()) && separates(g, &self.cut, self.x, self.y, self.adjacent).unwrap_or(false)
    }
}

pub fn is_rainbow(c: &VertexColoring, set: &BTreeSet<Vertex>) -> bool {
    let mut seen = BTreeSet::new();
    set.iter().all(|&v| seen.insert(c.get(v)))
}

/// Whether `x` and `y` lie in different components of `G − S`, with the
/// edge `xy` removed first when `drop_edge_xy` is set.
pub fn separates(g: &Graph, s: &BTreeSet<Vertex>, x: Vertex, y: Vertex, drop_edge_xy: bool) -> Result<bool> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y || s.contains(&x) || s.contains(&y) {
        return Err(Error::Precondition("x and y must be distinct and outside S".into()));
    }
    if drop_edge_xy && !g.has_edge(x, y) {
        return Err(Error::MissingEdge(x + 1, y + 1));
    }
    let mut seen = vec![false; g.n()];
    for &v in s {
        seen[v] = true;
    }
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if drop_edge_xy && ((u == x && w == y) || (u == y && w == x)) {
                continue;
            }
            if w == y {
                return Ok(false);
            }
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    Ok(true)
}

/// Bitmask view of a coloring with colors remapped to dense indices.
pub(crate) struct Checker<'a> {
    bg: &'a BitGraph,
    color_bit: Vec<Mask>,
    palette: usize,
}

struct PairCtx {
    x: Vertex,
    y: Vertex,
    ax: Mask,
    ay: Mask,
    candidates: Mask,
}

impl<'a> Checker<'a> {
    /// `colors` may use arbitrary positive ids; at most 128 distinct ones.
    pub fn new(bg: &'a BitGraph, colors: &[Color]) -> Checker<'a> {
        let mut dense: HashMap<Color, usize> = HashMap::new();
        let color_bit = colors
            .iter()
            .map(|c| {
                let next = dense.len();
                let i = *dense.entry(*c).or_insert(next);
                assert!(i < 128, "more than 128 colors");
                bit(i)
            })
            .collect();
        Checker { bg, color_bit, palette: dense.len() }
    }

    /// Builds a checker from per-vertex one-hot color masks.
    pub fn from_color_bits(bg: &'a BitGraph, color_bit: Vec<Mask>) -> Checker<'a> {
        let palette = color_bit.iter().fold(0, |a, b| a | b).count_ones() as usize;
        Checker { bg, color_bit, palette }
    }

    fn colors_of(&self, m: Mask) -> Mask {
        bits(m).fold(0, |acc, v| acc | self.color_bit[v])
    }

    fn is_rainbow_mask(&self, m: Mask) -> bool {
        let mut seen = 0;
        for v in bits(m) {
            if seen & self.color_bit[v] != 0 {
                return false;
            }
            seen |= self.color_bit[v];
        }
        true
    }

    fn ctx(&self, x: Vertex, y: Vertex, avoid: Mask) -> PairCtx {
        let mut ax = self.bg.adj[x];
        let mut ay = self.bg.adj[y];
        if ax & bit(y) != 0 {
            ax &= !bit(y);
            ay &= !bit(x);
        }
        PairCtx { x, y, ax, ay, candidates: self.bg.all() & !bit(x) & !bit(y) & !avoid }
    }

    fn adj(&self, p: &PairCtx, v: Vertex) -> Mask {
        if v == p.x {
            p.ax
        } else if v == p.y {
            p.ay
        } else {
            self.bg.adj[v]
        }
    }

    /// Internal vertices of a shortest `x`-`y` path avoiding `removed`
    /// (lowest ids preferred), or `None` when the pair is separated.
    fn shortest_path(&self, p: &PairCtx, removed: Mask) -> Option<Vec<Vertex>> {
        let open = self.bg.all() & !removed;
        let mut layers: Vec<Mask> = vec![bit(p.x)];
        let mut visited = bit(p.x);
        loop {
            let last = *layers.last().unwrap();
            let mut next = 0;
            for v in bits(last) {
                next |= self.adj(p, v);
            }
            if next & bit(p.y) != 0 {
                break;
            }
            next &= open & !visited;
            if next == 0 {
                return None;
            }
            visited |= next;
            layers.push(next);
        }
        let mut path = Vec::with_capacity(layers.len() - 1);
        let mut cur = p.y;
        for layer in layers.iter().skip(1).rev() {
            let cands = layer & self.adj(p, cur);
            let z = cands.trailing_zeros() as usize;
            path.push(z);
            cur = z;
        }
        path.reverse();
        Some(path)
    }

    fn dfs(&self, p: &PairCtx, cut: Mask, used: Mask, budget: usize, memo: &mut HashMap<Mask, usize>) -> Option<Mask> {
        let path = match self.shortest_path(p, cut) {
            None => return Some(cut),
            Some(path) => path,
        };
        if budget == 0 {
            return None;
        }
        if memo.get(&cut).is_some_and(|&b| b >= budget) {
            return None;
        }
        for w in path {
            if p.candidates & bit(w) == 0 || used & self.color_bit[w] != 0 {
                continue;
            }
            if let Some(found) = self.dfs(p, cut | bit(w), used | self.color_bit[w], budget - 1, memo) {
                return Some(found);
            }
        }
        memo.insert(cut, budget);
        None
    }

    fn sides(&self, x: Vertex, y: Vertex) -> Vec<(RainbowSide, Mask)> {
        if self.bg.adj[x] & bit(y) == 0 {
            vec![(RainbowSide::None, 0)]
        } else if self.color_bit[x] == self.color_bit[y] {
            vec![(RainbowSide::X, self.color_bit[x])]
        } else {
            vec![(RainbowSide::X, self.color_bit[x]), (RainbowSide::Y, self.color_bit[y])]
        }
    }

    /// Smallest witness (fewest cut vertices) for the pair; `avoid` vertices
    /// are never placed in the cut.
    pub fn minimal_cut(&self, x: Vertex, y: Vertex, avoid: Mask) -> Option<(Mask, RainbowSide)> {
        let p = self.ctx(x, y, avoid);
        let sides = self.sides(x, y);
        let max_budget = self.palette.min(self.bg.n.saturating_sub(2));
        let mut memos: Vec<HashMap<Mask, usize>> = vec![HashMap::new(); sides.len()];
        for budget in 0..=max_budget {
            for (i, &(side, forbidden)) in sides.iter().enumerate() {
                if let Some(cut) = self.dfs(&p, 0, forbidden, budget, &mut memos[i]) {
                    return Some((cut, side));
                }
            }
        }
        None
    }

    /// Verdict-only check: tries the neighborhood witnesses first, then a
    /// full search.
    pub fn pair_ok(&self, x: Vertex, y: Vertex) -> bool {
        let p = self.ctx(x, y, 0);
        let sides = self.sides(x, y);
        for &(_, forbidden) in &sides {
            for nb in [p.ax, p.ay] {
                if self.is_rainbow_mask(nb) && self.colors_of(nb) & forbidden == 0 {
                    return true;
                }
            }
        }
        let max_budget = self.palette.min(self.bg.n.saturating_sub(2));
        sides.iter().any(|&(_, forbidden)| self.dfs(&p, 0, forbidden, max_budget, &mut HashMap::new()).is_some())
    }

    pub fn first_failing_pair(&self) -> Option<(Vertex, Vertex)> {
        let n = self.bg.n;
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| !self.pair_ok(x, y))
    }
}

fn witness_from(bg: &BitGraph, x: Vertex, y: Vertex, cut: Mask, side: RainbowSide) -> CutWitness {
    CutWitness { x, y, adjacent: bg.adj[x] & bit(y) != 0, cut: bits(cut).collect(), rainbow_side: side }
}

fn check_pair_args(g: &Graph, c: &VertexColoring, x: Vertex, y: Vertex) -> Result<()> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    c.check_total(g)?;
    if x == y {
        return Err(Error::Precondition("pair endpoints must differ".into()));
    }
    Ok(())
}

/// Smallest rainbow vertex-cut witness for `x, y`, if any exists.
pub fn find_rainbow_cut(g: &Graph, c: &VertexColoring, x: Vertex, y: Vertex) -> Result<Option<CutWitness>> {
    find_rainbow_cut_avoiding(g, c, x, y, &BTreeSet::new())
}

/// As [`find_rainbow_cut`] but never places a vertex of `avoid` in the cut.
pub fn find_rainbow_cut_avoiding(
    g: &Graph,
    c: &VertexColoring,
    x: Vertex,
    y: Vertex,
    avoid: &BTreeSet<Vertex>,
) -> Result<Option<CutWitness>> {
    check_pair_args(g, c, x, y)?;
    let bg = BitGraph::new(g)?;
    let checker = Checker::new(&bg, c.as_slice());
    Ok(checker.minimal_cut(x, y, mask_of(avoid.iter().copied())).map(|(cut, side)| witness_from(&bg, x, y, cut, side)))
}

/// Outcome of certifying a whole coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub verdict: bool,
    pub witnesses: BTreeMap<(Vertex, Vertex), CutWitness>,
    pub failing_pair: Option<(Vertex, Vertex)>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Worker threads for the per-pair searches; 1 runs sequentially.
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { jobs: 1 }
    }
}

fn check_coloring_args(g: &Graph, c: &VertexColoring) -> Result<()> {
    c.check_total(g)?;
    if g.n() < 2 {
        return Err(Error::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Certifies `c` on `g`, returning a minimal witness for every pair or the
/// lexicographically smallest pair without one.
pub fn verify_coloring(g: &Graph, c: &VertexColoring) -> Result<VerificationReport> {
    verify_coloring_with(g, c, VerifyOptions::default())
}

pub fn verify_coloring_with(g: &Graph, c: &VertexColoring, opts: VerifyOptions) -> Result<VerificationReport> {
    check_coloring_args(g, c)?;
    let bg = BitGraph::new(g)?;
    let checker = Checker::new(&bg, c.as_slice());
    let pairs: Vec<(Vertex, Vertex)> = g.vertices().flat_map(|x| (x + 1..g.n()).map(move |y| (x, y))).collect();
    let solve =
        |&(x, y): &(Vertex, Vertex)| checker.minimal_cut(x, y, 0).map(|(cut, side)| witness_from(&bg, x, y, cut, side));

    let results: Vec<Option<CutWitness>> = run_pairs(&pairs, opts.jobs, &solve);
    let mut witnesses = BTreeMap::new();
    for (pair, res) in pairs.iter().zip(results) {
        match res {
            Some(w) => {
                witnesses.insert(*pair, w);
            }
            None => {
                return Ok(VerificationReport {
                    verdict: false,
                    witnesses: BTreeMap::new(),
                    failing_pair: Some(*pair),
                });
            }
        }
    }
    Ok(VerificationReport { verdict: true, witnesses, failing_pair: None })
}

#[cfg(feature = "parallel")]
fn run_pairs<F>(pairs: &[(Vertex, Vertex)], jobs: usize, solve: &F) -> Vec<Option<CutWitness>>
where
    F: Fn(&(Vertex, Vertex)) -> Option<CutWitness> + Sync,
{
    use rayon::prelude::*;
    if jobs <= 1 {
        return sequential_pairs(pairs, solve);
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| pairs.par_iter().map(solve).collect()),
        Err(_) => sequential_pairs(pairs, solve),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_pairs<F>(pairs: &[(Vertex, Vertex)], _jobs: usize, solve: &F) -> Vec<Option<CutWitness>>
where
    F: Fn(&(Vertex, Vertex)) -> Option<CutWitness>,
{
    sequential_pairs(pairs, solve)
}

fn sequential_pairs<F>(pairs: &[(Vertex, Vertex)], solve: &F) -> Vec<Option<CutWitness>>
where
    F: Fn(&(Vertex, Vertex)) -> Option<CutWitness>,
{
    let mut out = Vec::with_capacity(pairs.len());
    for p in pairs {
        let r = solve(p);
        let stop = r.is_none();
        out.push(r);
        if stop {
            break;
        }
    }
    out
}

/// Fast verdict: is `c` a rainbow vertex-disconnection coloring of `g`?
pub fn is_rainbow_disconnected(g: &Graph, c: &VertexColoring) -> Result<bool> {
    Ok(first_failing_pair(g, c)?.is_none())
}

/// Lexicographically smallest pair without a rainbow cut.
pub fn first_failing_pair(g: &Graph, c: &VertexColoring) -> Result<Option<(Vertex, Vertex)>> {
    check_coloring_args(g, c)?;
    let bg = BitGraph::new(g)?;
    Ok(Checker::new(&bg, c.as_slice()).first_failing_pair())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[Color]) -> VertexColoring {
        VertexColoring::new(v.to_vec()).unwrap()
    }

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    #[test]
    fn separates_examples() {
        assert!(separates(&Graph::path(3), &set(&[1]), 0, 2, false).unwrap());
        assert!(separates(&Graph::complete(2), &set(&[]), 0, 1, true).unwrap());
        assert!(!separates(&Graph::cycle(4), &set(&[1]), 0, 2, false).unwrap());
        assert!(separates(&Graph::path(3), &set(&[0]), 0, 2, false).is_err());
        assert!(separates(&Graph::path(3), &set(&[]), 0, 2, true).is_err());
    }

    #[test]
    fn tree_witnesses() {
        let g = Graph::path(5);
        let c = VertexColoring::uniform(5);
        let w = find_rainbow_cut(&g, &c, 0, 4).unwrap().unwrap();
        assert_eq!(w.cut.len(), 1);
        assert!(!w.adjacent && w.rainbow_side == RainbowSide::None);
        let w = find_rainbow_cut(&g, &c, 1, 2).unwrap().unwrap();
        assert!(w.cut.is_empty() && w.adjacent);
        assert!(w.validate(&g, &c));
    }

    #[test]
    fn c4_single_color_fails_adjacent_pair() {
        let g = Graph::cycle(4);
        assert_eq!(find_rainbow_cut(&g, &VertexColoring::uniform(4), 0, 1).unwrap(), None);
    }

    #[test]
    fn c4_two_colors() {
        let g = Graph::cycle(4);
        let c = col(&[1, 1, 2, 2]);
        let w = find_rainbow_cut(&g, &c, 0, 1).unwrap().unwrap();
        assert_eq!(w.cut.len(), 1);
        assert_ne!(w.rainbow_side, RainbowSide::None);
        assert!(w.validate(&g, &c));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_coloring(&Graph::path(5), &VertexColoring::uniform(5)).unwrap().verdict);
        let c6 = Graph::cycle(6);
        let r = verify_coloring(&c6, &col(&[1, 2, 1, 2, 1, 2])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.witnesses.len(), 15);
        assert!(r.witnesses.values().all(|w| w.validate(&c6, &col(&[1, 2, 1, 2, 1, 2]))));
        let r = verify_coloring(&c6, &VertexColoring::uniform(6)).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.failing_pair, Some((0, 1)));
    }

    #[test]
    fn bridge_has_empty_cut() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let c = col(&[1, 1, 2, 1]);
        let w = find_rainbow_cut(&g, &c, 2, 3).unwrap().unwrap();
        assert!(w.cut.is_empty());
    }

    #[test]
    fn avoid_set_is_respected() {
        let g = Graph::path(3);
        let c = VertexColoring::uniform(3);
        assert_eq!(find_rainbow_cut_avoiding(&g, &c, 0, 2, &set(&[1])).unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(verify_coloring(&Graph::path(3), &VertexColoring::uniform(2)).is_err());
        assert_eq!(verify_coloring(&Graph::empty(2), &VertexColoring::uniform(2)), Err(Error::Disconnected));
    }

    #[test]
    fn parallel_report_matches_sequential() {
        let g = Graph::complete_bipartite(2, 4);
        let c = col(&[1, 2, 1, 2, 3, 4]);
        let a = verify_coloring(&g, &c).unwrap();
        let b = verify_coloring_with(&g, &c, VerifyOptions { jobs: 4 }).unwrap();
        assert_eq!(a, b);
        assert!(a.verdict);
    }
}
