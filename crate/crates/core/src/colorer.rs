//! Constructive colorings of K4-minor-free graphs with at most `max(Δ, 1)`
//! colors.
//!
//! The recursion follows the structure theory of these graphs: paths and
//! cycles are colored directly, cut vertices split the problem into blocks,
//! adjacent 2-vertices are contracted and lifted back, and otherwise a hub
//! vertex `u` with `T(u) = {u1, u2}` is found, its 2-vertex neighbors are
//! removed, the smaller graph is colored and the coloring is repaired and
//! extended. Every step is certified with the verifier; a failed check
//! falls back to the exact solver on the current graph and is recorded.

use std::collections::BTreeSet;
use std::fmt;

use crate::blocks::block_decomposition;
use crate::error::{Error, Result};
use crate::exact::rvd::{rvd_exact_with, ExactConfig};
use crate::graph::{Color, Graph, Vertex, VertexColoring};
use crate::recognize::{is_k4_minor_free, selection_holds};
use crate::verify::{find_rainbow_cut_avoiding, is_rainbow_disconnected};

/// Which extension rule lifted a coloring across a contracted edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftRule {
    /// `c(u) ≠ c(v1)`: `v` gets a color other than `c(u1)`.
    FreshV,
    /// `c(u) = c(v1)`: `u` takes `c(u1)` and `v` takes `c(v1)`.
    ShiftU,
    /// `u, u1, v1` share a color: `v` gets a color other than `c(u)`.
    Monochromatic,
}

/// Recoloring moves applied to the coloring of the reduced graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recolor {
    /// `u, u1, u2` were monochromatic.
    AllEqual,
    /// Twin swap or recoloring inside `M_H(u1, u2)`.
    SharedTwoVertices,
    /// `c(u) = c(u1)`.
    HubMatchesFirst,
    /// `c(u) = c(u2)` with `u1 ~ u2`.
    HubMatchesSecond,
    /// Coloring borrowed from `G − M(u, u1) + uu1`.
    Restricted,
    /// `u` given any color outside `c(u1), c(u2)` that keeps the reduced
    /// graph valid.
    DirectRainbow,
}

/// Final extension from the reduced graph back to the current graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// `u, u1, u2` rainbow.
    Rainbow,
    /// `c(u1) = c(u2) ≠ c(u)`.
    EqualEnds,
    /// `c(u) = c(ui)` with `m(u, ui) ≤ 1`.
    SparseSide,
    /// Back from the auxiliary graph, `s1 ~ u2`.
    AuxAdjacent,
    /// Back from the auxiliary graph, `s1 ≁ u2`.
    AuxNonadjacent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    BaseCase(&'static str),
    BlockSplit { blocks: usize },
    Contract { u: Vertex, v: Vertex, rule: LiftRule },
    SpecialK2t { hubs: (Vertex, Vertex) },
    ClosedTriple { u: Vertex, u1: Vertex, u2: Vertex },
    HConstruction { u: Vertex, q_set: Vec<Vertex> },
    Recolor(Recolor),
    CaseExtension(Extension),
    GPrimeConstruction { q1: Vertex, q2: Vertex },
    ExactFallback(String),
}

/// One recorded step; vertex ids refer to the graph being colored at that
/// recursion depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub depth: usize,
    pub order: usize,
    pub step: Step,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColoringTrace {
    pub steps: Vec<TraceEntry>,
}

impl ColoringTrace {
    pub fn fallbacks(&self) -> usize {
        self.steps.iter().filter(|e| matches!(e.step, Step::ExactFallback(_))).count()
    }
}

impl fmt::Display for ColoringTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.steps {
            let pad = "  ".repeat(e.depth);
            let one = |v: Vertex| v + 1;
            let text = match &e.step {
                Step::BaseCase(name) => format!("base case: {name}"),
                Step::BlockSplit { blocks } => format!("split into {blocks} blocks"),
                Step::Contract { u, v, rule } => format!("contract {}-{} ({rule:?})", one(*u), one(*v)),
                Step::SpecialK2t { hubs } => format!("K2,t with hubs {} {}", one(hubs.0), one(hubs.1)),
                Step::ClosedTriple { u, u1, u2 } => format!("closed triple {} {} {}", one(*u), one(*u1), one(*u2)),
                Step::HConstruction { u, q_set } => {
                    let q: Vec<String> = q_set.iter().map(|&v| one(v).to_string()).collect();
                    format!("reduce at hub {} removing {}", one(*u), q.join(" "))
                }
                Step::Recolor(r) => format!("recolor: {r:?}"),
                Step::CaseExtension(x) => format!("extend: {x:?}"),
                Step::GPrimeConstruction { q1, q2 } => format!("auxiliary graph with {} {}", one(*q1), one(*q2)),
                Step::ExactFallback(why) => format!("exact fallback: {why}"),
            };
            writeln!(f, "{pad}[n={}] {text}", e.order)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ColorerConfig {
    /// Largest graph the exact fallback may solve.
    pub fallback_cap: usize,
}

impl Default for ColorerConfig {
    fn default() -> Self {
        ColorerConfig { fallback_cap: crate::exact::rvd::DEFAULT_CAP }
    }
}

pub fn color_k4mf(g: &Graph) -> Result<(VertexColoring, ColoringTrace)> {
    color_k4mf_with(g, &ColorerConfig::default())
}

pub fn color_k4mf_with(g: &Graph, cfg: &ColorerConfig) -> Result<(VertexColoring, ColoringTrace)> {
    if g.n() < 2 {
        return Err(Error::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !is_k4_minor_free(g) {
        return Err(Error::NotK4MinorFree);
    }
    let mut c = Colorer { cfg: cfg.clone(), trace: ColoringTrace::default(), depth: 0 };
    let colors = c.solve(g)?;
    Ok((VertexColoring::new(colors)?, c.trace))
}

/// Lifts a coloring of `G/uv` (with `v` merged into `u`, as produced by
/// [`Graph::contract_edge`]) back to `G`.
pub fn lift_contraction_coloring(g: &Graph, u: Vertex, v: Vertex, c_h: &VertexColoring) -> Result<VertexColoring> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if g.n() < 4 || !crate::blocks::is_two_connected(g) {
        return Err(Error::Precondition("graph must be 2-connected with at least 4 vertices".into()));
    }
    if !g.has_edge(u, v) || g.degree(u) != 2 || g.degree(v) != 2 {
        return Err(Error::Precondition(format!("{} and {} are not adjacent 2-vertices", u + 1, v + 1)));
    }
    let (h, map) = g.contract_edge(u, v)?;
    if c_h.len() != h.n() {
        return Err(Error::ColoringSize { expected: h.n(), found: c_h.len() });
    }
    if let Some((x, y)) = crate::verify::first_failing_pair(&h, c_h)? {
        return Err(Error::NotRainbowDisconnected(x + 1, y + 1));
    }
    let (colors, _) = lift(g, u, v, &map, c_h.as_slice());
    VertexColoring::new(colors)
}

fn lift(g: &Graph, u: Vertex, v: Vertex, map: &[Vertex], ch: &[Color]) -> (Vec<Color>, LiftRule) {
    let u1 = other_neighbor(g, u, v);
    let v1 = other_neighbor(g, v, u);
    let mut c: Vec<Color> = g.vertices().map(|w| ch[map[w]]).collect();
    let (cu, cu1, cv1) = (ch[map[u]], ch[map[u1]], ch[map[v1]]);
    let palette: BTreeSet<Color> = ch.iter().copied().collect();
    let rule = if cu == cu1 && cu1 == cv1 {
        c[v] = lowest_in(&palette, &[cu]).unwrap_or(cu + 1);
        LiftRule::Monochromatic
    } else if cu != cv1 {
        c[v] = lowest_in(&palette, &[cu1]).unwrap_or(cu1 + 1);
        LiftRule::FreshV
    } else {
        c[u] = cu1;
        c[v] = cv1;
        LiftRule::ShiftU
    };
    (c, rule)
}

fn other_neighbor(g: &Graph, a: Vertex, not: Vertex) -> Vertex {
    *g.neighbors(a).iter().find(|&&w| w != not).expect("2-vertex has two neighbors")
}

fn lowest_in(palette: &BTreeSet<Color>, avoid: &[Color]) -> Option<Color> {
    palette.iter().copied().find(|c| !avoid.contains(c))
}

/// `G − Q + {uu1, uu2}` with the remaining vertices renumbered in order.
/// Returns the graph and, for each new index, the original vertex.
pub fn build_h_graph(
    g: &Graph,
    u: Vertex,
    t: (Vertex, Vertex),
    q_set: &BTreeSet<Vertex>,
) -> Result<(Graph, Vec<Vertex>)> {
    for v in [u, t.0, t.1] {
        g.check_vertex(v)?;
    }
    let expected_t = g.t_set_unchecked(u);
    if g.degree(u) < 3 || expected_t != BTreeSet::from([t.0, t.1]) {
        return Err(Error::Precondition(format!("T({}) is not {{{}, {}}}", u + 1, t.0 + 1, t.1 + 1)));
    }
    let expected_q: BTreeSet<Vertex> = g.neighbors(u).iter().copied().filter(|&z| g.degree(z) == 2).collect();
    if *q_set != expected_q || q_set.is_empty() {
        return Err(Error::Precondition(format!("{q_set:?} is not the set of 2-vertex neighbors of {}", u + 1)));
    }
    Ok(reduce_hub(g, u, t.0, t.1, q_set))
}

fn reduce_hub(g: &Graph, u: Vertex, u1: Vertex, u2: Vertex, q: &BTreeSet<Vertex>) -> (Graph, Vec<Vertex>) {
    let (sub, to_old) = g.without_vertices(q);
    let idx = |v: Vertex| to_old.binary_search(&v).expect("kept vertex");
    let h = sub.with_edges(&[(idx(u), idx(u1)), (idx(u), idx(u2))]);
    (h, to_old)
}

/// Assigns distinct colors to `set` (in vertex order), each the lowest color
/// in `1..=limit` not in `avoid` and not yet used inside `set`.
fn fill_rainbow(c: &mut [Color], set: &BTreeSet<Vertex>, avoid: &BTreeSet<Color>, limit: Color) -> Option<()> {
    let mut used = avoid.clone();
    for &v in set {
        let col = (1..=limit).find(|x| !used.contains(x))?;
        c[v] = col;
        used.insert(col);
    }
    Some(())
}

fn lowest_avoiding(avoid: &[Color], limit: Color) -> Option<Color> {
    (1..=limit).find(|x| !avoid.contains(x))
}

fn is_k2t(g: &Graph) -> Option<(Vertex, Vertex)> {
    let big: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    let [a, b] = big[..] else { return None };
    let rest_ok = g.vertices().filter(|&v| v != a && v != b).all(|v| g.neighbors(v) == [a.min(b), a.max(b)]);
    (rest_ok && g.n() >= 4).then_some((a, b))
}

/// A construction attempt, or why it could not proceed.
type Attempt = std::result::Result<Vec<Color>, &'static str>;

struct Colorer {
    cfg: ColorerConfig,
    trace: ColoringTrace,
    depth: usize,
}

/// Role assignment at a hub: `u` with `T(u) = {u1, u2}` and `s1` a
/// further member of `T(u1)`.
#[derive(Clone, Copy, Debug)]
struct Roles {
    u: Vertex,
    u1: Vertex,
    u2: Vertex,
    s1: Option<Vertex>,
}

impl Colorer {
    fn record(&mut self, g: &Graph, step: Step) {
        self.trace.steps.push(TraceEntry { depth: self.depth, order: g.n(), step });
    }

    fn solve(&mut self, g: &Graph) -> Result<Vec<Color>> {
        self.depth += 1;
        let out = self.solve_inner(g);
        self.depth -= 1;
        out
    }

    fn solve_inner(&mut self, g: &Graph) -> Result<Vec<Color>> {
        let n = g.n();
        if n <= 2 || g.is_tree() {
            self.record(g, Step::BaseCase("tree"));
            return Ok(vec![1; n]);
        }
        if g.is_cycle() {
            self.record(g, Step::BaseCase("cycle"));
            return Ok(cycle_coloring(g));
        }
        let d = block_decomposition(g)?;
        if !d.is_two_connected() {
            self.record(g, Step::BlockSplit { blocks: d.blocks.len() });
            let mut parts = Vec::with_capacity(d.blocks.len());
            for b in &d.blocks {
                let (sub, map) = g.induced_subgraph(b);
                let colors = self.solve(&sub)?;
                parts.push((map, colors));
            }
            return Ok(merge_blocks(n, &parts));
        }
        match self.two_connected(g) {
            Ok(c) if self.accept(g, &c) => Ok(c),
            Ok(_) => self.fallback(g, "constructed coloring failed its check"),
            Err(why) => self.fallback(g, why),
        }
    }

    fn accept(&self, g: &Graph, c: &[Color]) -> bool {
        let limit = g.max_degree().max(1);
        let Ok(col) = VertexColoring::new(c.to_vec()) else { return false };
        col.palette_size() <= limit
            && c.iter().all(|&x| x as usize <= limit)
            && is_rainbow_disconnected(g, &col).unwrap_or(false)
    }

    fn ok_on(&self, g: &Graph, c: &[Color]) -> bool {
        VertexColoring::new(c.to_vec()).map(|col| is_rainbow_disconnected(g, &col).unwrap_or(false)).unwrap_or(false)
    }

    /// Gives `v` the lowest color outside `avoid` that keeps `c` valid on
    /// `h`; leaves `c` unchanged when there is none.
    fn recolor_checked(&self, h: &Graph, c: &mut [Color], v: Vertex, avoid: &[Color], limit: Color) -> bool {
        let old = c[v];
        for col in (1..=limit).filter(|x| !avoid.contains(x)) {
            c[v] = col;
            if self.ok_on(h, c) {
                return true;
            }
        }
        c[v] = old;
        false
    }

    fn fallback(&mut self, g: &Graph, why: &str) -> Result<Vec<Color>> {
        self.record(g, Step::ExactFallback(why.to_string()));
        let r = rvd_exact_with(g, &ExactConfig::with_cap(self.cfg.fallback_cap))?;
        if r.value > g.max_degree().max(1) {
            return Err(Error::Precondition(format!("exact value {} exceeds maximum degree", r.value)));
        }
        Ok(r.witness.as_slice().to_vec())
    }

    /// A 2-connected graph that is neither a cycle nor a tree, so `Δ ≥ 3`.
    fn two_connected(&mut self, g: &Graph) -> Attempt {
        if let Some((a, b)) = is_k2t(g) {
            let name = if g.n() == 4 { Step::BaseCase("K4-e") } else { Step::SpecialK2t { hubs: (a, b) } };
            self.record(g, name);
            return Ok(k2t_coloring(g, a, b));
        }
        if let Some((u, v)) = crate::recognize::adjacent_two_vertices(g) {
            let (h, map) = g.contract_edge(u, v).map_err(|_| "contraction failed")?;
            let ch = self.solve(&h).map_err(|_| "contracted graph could not be colored")?;
            let (c, rule) = lift(g, u, v, &map, &ch);
            self.record(g, Step::Contract { u, v, rule });
            return Ok(c);
        }
        let roles = choose_hub(g).ok_or("no hub vertex found")?;
        if closed_triple(g, &roles) {
            self.record(g, Step::ClosedTriple { u: roles.u, u1: roles.u1, u2: roles.u2 });
            if let Some(c) = triple_coloring(g, &roles) {
                if self.ok_on(g, &c) {
                    return Ok(c);
                }
            }
        }
        self.hub_step(g, roles, false)
    }

    fn hub_step(&mut self, g: &Graph, r: Roles, nested: bool) -> Attempt {
        let Roles { u, u1, u2, s1 } = r;
        let limit = g.max_degree() as Color;
        let q: BTreeSet<Vertex> = g.neighbors(u).iter().copied().filter(|&z| g.degree(z) == 2).collect();
        if q.is_empty() {
            return Err("hub has no 2-vertex neighbors");
        }
        let (h, to_old) = reduce_hub(g, u, u1, u2, &q);
        self.record(g, Step::HConstruction { u, q_set: q.iter().copied().collect() });
        let hi = |v: Vertex| to_old.binary_search(&v).expect("vertex kept in H");
        let (hu, hu1, hu2) = (hi(u), hi(u1), hi(u2));
        let hs1 = s1.map(hi);
        let mut ch = self.solve(&h).map_err(|_| "reduced graph could not be colored")?;

        let adj12 = g.has_edge(u1, u2);
        let m_h12 = h.m_set_unchecked(hu1, hu2);
        let mut restricted = false;
        for _ in 0..8 {
            let (cu, c1, c2) = (ch[hu], ch[hu1], ch[hu2]);
            if cu == c1 && c1 == c2 {
                self.record(g, Step::Recolor(Recolor::AllEqual));
                let mut avoid = vec![c1];
                if let Some(s) = hs1 {
                    avoid.push(ch[s]);
                }
                if !self.recolor_checked(&h, &mut ch, hu, &avoid, limit) {
                    return Err("no valid recoloring of a monochromatic hub");
                }
                continue;
            }
            let lift = |ch: &[Color]| -> Vec<Color> {
                let mut c = vec![0; g.n()];
                for (i, &v) in to_old.iter().enumerate() {
                    c[v] = ch[i];
                }
                c
            };
            if cu != c1 && cu != c2 && c1 != c2 {
                self.record(g, Step::CaseExtension(Extension::Rainbow));
                let mut c = lift(&ch);
                let avoid: BTreeSet<Color> = g.neighbors(u).iter().filter(|z| !q.contains(z)).map(|&z| c[z]).collect();
                fill_rainbow(&mut c, &q, &avoid, limit).ok_or("palette exhausted while extending")?;
                return Ok(c);
            }
            if c1 == c2 {
                self.record(g, Step::CaseExtension(Extension::EqualEnds));
                let mut c = lift(&ch);
                for (a, b) in [(u1, u2), (u2, u1)] {
                    let m = g.m_set_unchecked(u, a);
                    let mut avoid = BTreeSet::from([c[b]]);
                    if g.has_edge(u, a) {
                        avoid.insert(c[u]);
                    }
                    fill_rainbow(&mut c, &m, &avoid, limit).ok_or("palette exhausted while extending")?;
                }
                return Ok(c);
            }
            // Exactly one of u1, u2 shares the hub's color.
            let (ui, uj) = if cu == c1 { (u1, u2) } else { (u2, u1) };
            if !adj12 && g.m_set_unchecked(u, ui).len() <= 1 {
                self.record(g, Step::CaseExtension(Extension::SparseSide));
                let mut c = lift(&ch);
                let mi = g.m_set_unchecked(u, ui);
                let avoid = BTreeSet::from([c[u1], c[u2]]);
                fill_rainbow(&mut c, &mi, &avoid, limit).ok_or("palette exhausted while extending")?;
                let mj = g.m_set_unchecked(u, uj);
                let avoid: BTreeSet<Color> = g.neighbors(u).iter().filter(|z| !mj.contains(z)).map(|&z| c[z]).collect();
                fill_rainbow(&mut c, &mj, &avoid, limit).ok_or("palette exhausted while extending")?;
                return Ok(c);
            }
            if m_h12.len() >= 2 {
                self.record(g, Step::Recolor(Recolor::SharedTwoVertices));
                let twins: Vec<Vertex> = m_h12.iter().copied().filter(|&w| w != hu).collect();
                if let Some(&w) = twins.iter().find(|&&w| ch[w] != c1 && ch[w] != c2) {
                    ch.swap(hu, w);
                    continue;
                }
                let cs = hs1.map(|s| ch[s]);
                match cs {
                    Some(cs) if cs == c1 || cs == c2 => {
                        let w = *m_h12.iter().find(|&&w| ch[w] == cs).ok_or("no twin carries the color of s1")?;
                        ch.swap(hu, w);
                        if !self.recolor_checked(&h, &mut ch, hu, &[c1, c2], limit) {
                            return Err("twin recoloring failed");
                        }
                    }
                    _ => {
                        let mut avoid = vec![c1, c2];
                        avoid.extend(cs);
                        if !self.recolor_checked(&h, &mut ch, hu, &avoid, limit) {
                            return Err("twin recoloring failed");
                        }
                    }
                }
                continue;
            }
            if ui == u1 {
                self.record(g, Step::Recolor(Recolor::HubMatchesFirst));
                let free_cut = g.max_degree() >= 4
                    && hs1.is_some_and(|s| {
                        let col = VertexColoring::new(ch.clone()).expect("positive colors");
                        matches!(find_rainbow_cut_avoiding(&h, &col, hu1, s, &BTreeSet::from([hu])), Ok(Some(_)))
                    });
                let avoid: Vec<Color> = if free_cut {
                    vec![ch[hs1.ok_or("s1 missing")?], c1, c2]
                } else {
                    let mut v: Vec<Color> = h.neighbors(hu1).iter().filter(|&&w| w != hu).map(|&w| ch[w]).collect();
                    v.push(c1);
                    v
                };
                if !self.recolor_checked(&h, &mut ch, hu, &avoid, limit) {
                    return Err("recoloring with c(u) = c(u1) failed");
                }
                continue;
            }
            // c(u) = c(u2) ≠ c(u1)
            if adj12 {
                self.record(g, Step::Recolor(Recolor::HubMatchesSecond));
                let cs = ch[hs1.ok_or("s1 missing")?];
                let avoid = if cs != c2 { [cs, c2] } else { [cs, c1] };
                if !self.recolor_checked(&h, &mut ch, hu, &avoid, limit) {
                    return Err("recoloring with c(u) = c(u2) failed");
                }
                continue;
            }
            let m_u1 = g.m_set_unchecked(u, u1);
            if !m_u1.is_empty() && !restricted {
                restricted = true;
                let (sub, sub_old) = g.without_vertices(&m_u1);
                let si = |v: Vertex| sub_old.binary_search(&v).expect("kept vertex");
                let h1 = sub.with_edges(&[(si(u), si(u1))]);
                let c1_col = self.solve(&h1).map_err(|_| "graph without M(u, u1) could not be colored")?;
                let borrowed: Vec<Color> = to_old.iter().map(|&v| c1_col[si(v)]).collect();
                if self.ok_on(&h, &borrowed) {
                    self.record(g, Step::Recolor(Recolor::Restricted));
                    ch = borrowed;
                    continue;
                }
            }
            if self.recolor_checked(&h, &mut ch, hu, &[c1, c2], limit) {
                self.record(g, Step::Recolor(Recolor::DirectRainbow));
                continue;
            }
            let s1 = s1.ok_or("s1 missing")?;
            if g.m_set_unchecked(u1, s1).len() <= 1 && !nested {
                let t = g.t_set_unchecked(u1);
                if t == BTreeSet::from([u, s1]) && g.degree(u1) >= 3 {
                    let other = g.t_set_unchecked(u).into_iter().find(|&w| w != u1 && w != s1);
                    let sub = Roles { u: u1, u1: u, u2: s1, s1: other };
                    return self.hub_step(g, sub, true);
                }
            }
            return self.aux_graph(g, r);
        }
        Err("repair loop did not settle")
    }

    /// Colors the auxiliary graph replacing `u`, `u1` and the 2-vertex
    /// bundles `M(u, u2)`, `M(u1, s1)` by two common neighbors of `s1` and
    /// `u2`, then extends back.
    fn aux_graph(&mut self, g: &Graph, r: Roles) -> Attempt {
        let Roles { u, u1, u2, s1 } = r;
        let s1 = s1.ok_or("s1 missing")?;
        let limit = g.max_degree() as Color;
        let m_uu2 = g.m_set_unchecked(u, u2);
        let m_u1s1 = g.m_set_unchecked(u1, s1);
        let mut removed: BTreeSet<Vertex> = m_uu2.union(&m_u1s1).copied().collect();
        removed.insert(u);
        removed.insert(u1);
        let (sub, to_old) = g.without_vertices(&removed);
        let idx = |v: Vertex| to_old.binary_search(&v).expect("kept vertex");
        let (q1, q2) = (sub.n(), sub.n() + 1);
        let (gs1, gu2) = (idx(s1), idx(u2));
        let gp = sub.with_new_vertices(2, &[(q1, gs1), (q1, gu2), (q2, gs1), (q2, gu2)]);
        if gp.n() >= g.n() || !gp.is_connected() || !is_k4_minor_free(&gp) {
            return Err("auxiliary graph is not smaller, connected and K4-minor-free");
        }
        self.record(g, Step::GPrimeConstruction { q1, q2 });
        let cp = self.solve(&gp).map_err(|_| "auxiliary graph could not be colored")?;
        let mut c = vec![0; g.n()];
        for (i, &v) in to_old.iter().enumerate() {
            c[v] = cp[i];
        }
        let (cs, cu2) = (cp[gs1], cp[gu2]);
        if g.has_edge(s1, u2) {
            self.record(g, Step::CaseExtension(Extension::AuxAdjacent));
            let q = [q1, q2]
                .into_iter()
                .find(|&q| cp[q] != cs && cp[q] != cu2)
                .ok_or("no rainbow triangle through q1 or q2")?;
            c[u1] = cp[q];
            c[u] = lowest_avoiding(&[cs, cu2], limit).ok_or("palette exhausted")?;
            let avoid: BTreeSet<Color> = g.neighbors(u).iter().filter(|z| !m_uu2.contains(z)).map(|&z| c[z]).collect();
            fill_rainbow(&mut c, &m_uu2, &avoid, limit).ok_or("palette exhausted while extending")?;
            let avoid: BTreeSet<Color> =
                g.neighbors(u1).iter().filter(|z| !m_u1s1.contains(z)).map(|&z| c[z]).collect();
            fill_rainbow(&mut c, &m_u1s1, &avoid, limit).ok_or("palette exhausted while extending")?;
        } else {
            self.record(g, Step::CaseExtension(Extension::AuxNonadjacent));
            let q = [q1, q2].into_iter().find(|&q| cp[q] != cu2).ok_or("both q1 and q2 share the color of u2")?;
            c[u] = cp[q];
            c[u1] = lowest_avoiding(&[cs, cu2], limit).ok_or("palette exhausted")?;
            let avoid: BTreeSet<Color> = g.neighbors(u).iter().filter(|z| !m_uu2.contains(z)).map(|&z| c[z]).collect();
            fill_rainbow(&mut c, &m_uu2, &avoid, limit).ok_or("palette exhausted while extending")?;
            let avoid = if g.has_edge(u1, s1) { BTreeSet::from([cs, cu2]) } else { BTreeSet::from([cu2]) };
            fill_rainbow(&mut c, &m_u1s1, &avoid, limit).ok_or("palette exhausted while extending")?;
        }
        Ok(c)
    }
}

fn cycle_coloring(g: &Graph) -> Vec<Color> {
    // Walk the cycle from vertex 0 and color in runs of two.
    let n = g.n();
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < n {
        let next = *g.neighbors(cur).iter().find(|&&w| w != prev).expect("cycle vertex has two neighbors");
        prev = cur;
        cur = next;
        order.push(cur);
    }
    let mut c = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        c[v] = ((i / 2) % 2) as Color + 1;
    }
    c
}

fn k2t_coloring(g: &Graph, a: Vertex, b: Vertex) -> Vec<Color> {
    let mut c = vec![0; g.n()];
    let leaves: Vec<Vertex> = g.vertices().filter(|&v| v != a && v != b).collect();
    for (i, &v) in leaves.iter().enumerate() {
        c[v] = i as Color + 1;
    }
    c[a] = 1;
    c[b] = if g.has_edge(a, b) { leaves.len() as Color + 1 } else { 2 };
    c
}

/// Glues block colorings: each block after the first meets the colored part
/// in one cut vertex and has its palette permuted by a transposition so the
/// colors agree there.
fn merge_blocks(n: usize, parts: &[(Vec<Vertex>, Vec<Color>)]) -> Vec<Color> {
    let mut colors = vec![0 as Color; n];
    let mut done = vec![false; parts.len()];
    for round in 0..parts.len() {
        let Some(i) =
            (0..parts.len()).find(|&i| !done[i] && (round == 0 || parts[i].0.iter().any(|&v| colors[v] != 0)))
        else {
            break;
        };
        done[i] = true;
        let (map, local) = &parts[i];
        let swap = map.iter().position(|&v| colors[v] != 0).map(|a| (local[a], colors[map[a]]));
        for (j, &v) in map.iter().enumerate() {
            let mut x = local[j];
            if let Some((from, to)) = swap {
                if x == from {
                    x = to;
                } else if x == to {
                    x = from;
                }
            }
            if colors[v] == 0 {
                colors[v] = x;
            }
        }
    }
    colors
}

/// Picks the hub and orients `u1`, `u2` deterministically: hubs satisfying
/// the selection claim first, then smaller ids; `u1` is the member of
/// `T(u)` with the required `t` value, smaller id on ties.
fn choose_hub(g: &Graph) -> Option<Roles> {
    let hubs: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 3 && g.t_set_unchecked(v).len() == 2).collect();
    let u = hubs.iter().copied().find(|&v| selection_holds(g, v)).or_else(|| hubs.first().copied())?;
    let t: Vec<Vertex> = g.t_set_unchecked(u).into_iter().collect();
    let (a, b) = (t[0], t[1]);
    let ta = g.t_set_unchecked(a).len();
    let tb = g.t_set_unchecked(b).len();
    let good = |tv: usize| if g.has_edge(a, b) { (2..=3).contains(&tv) } else { tv == 2 };
    let (mut u1, mut u2) = match (good(ta), good(tb)) {
        (true, true) if g.has_edge(a, b) && tb == 2 && ta != 2 => (b, a),
        (true, _) => (a, b),
        (false, true) => (b, a),
        _ => (a, b),
    };
    let s1_of = |x: Vertex, y: Vertex| g.t_set_unchecked(x).into_iter().find(|&s| s != u && s != y);
    let mut s1 = s1_of(u1, u2);
    if s1.is_none() {
        if let Some(s) = s1_of(u2, u1) {
            std::mem::swap(&mut u1, &mut u2);
            s1 = Some(s);
        }
    }
    Some(Roles { u, u1, u2, s1 })
}

/// Whether `u, u1, u2` only see each other among vertices of degree ≥ 3.
fn closed_triple(g: &Graph, r: &Roles) -> bool {
    let inside = |x: Vertex, others: [Vertex; 2]| g.t_set_unchecked(x).iter().all(|w| others.contains(w));
    inside(r.u1, [r.u, r.u2]) && inside(r.u2, [r.u, r.u1])
}

fn triple_coloring(g: &Graph, r: &Roles) -> Option<Vec<Color>> {
    let Roles { u, u1, u2, .. } = *r;
    if g.n() != 3 + [(u, u1), (u, u2), (u1, u2)].iter().map(|&(a, b)| g.m_set_unchecked(a, b).len()).sum::<usize>() {
        return None;
    }
    let limit = g.max_degree() as Color;
    let mut c = vec![0; g.n()];
    c[u] = 1;
    c[u1] = 2;
    c[u2] = 3;
    let avoid = BTreeSet::from([c[u], c[u2]]);
    fill_rainbow(&mut c, &g.m_set_unchecked(u1, u2), &avoid, limit)?;
    for (a, z) in [(u1, u2), (u2, u1)] {
        let mut avoid = BTreeSet::from([c[z]]);
        if g.has_edge(u, a) {
            avoid.insert(c[u]);
        }
        fill_rainbow(&mut c, &g.m_set_unchecked(u, a), &avoid, limit)?;
    }
    Some(c)
}
