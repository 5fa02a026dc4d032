//! Bipartite and split gadgets relating rainbow vertex-disconnection to
//! (k-fold) chromatic numbers, with colorings translated in both
//! directions.
//!
//! Gadget vertices are numbered originals first (copy-major for replicated
//! gadgets), then the S-vertices of each source edge in lexicographic edge
//! order, then the T-vertices likewise.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::classic::{
    chromatic_number, independence_number, kfold_chromatic_number_with, optimal_coloring, KfoldCap,
};
use crate::exact::rvd::{rvd_exact_with, ExactConfig};
use crate::graph::{Color, Graph, Vertex, VertexColoring};
use crate::verify::first_failing_pair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Bipartite,
    Split,
    BipartiteReplicated(usize),
    SplitReplicated(usize),
}

impl GadgetKind {
    pub fn copies(self) -> usize {
        match self {
            GadgetKind::Bipartite | GadgetKind::Split => 1,
            GadgetKind::BipartiteReplicated(k) | GadgetKind::SplitReplicated(k) => k,
        }
    }

    pub fn is_bipartite(self) -> bool {
        matches!(self, GadgetKind::Bipartite | GadgetKind::BipartiteReplicated(_))
    }

    pub fn is_replicated(self) -> bool {
        matches!(self, GadgetKind::BipartiteReplicated(_) | GadgetKind::SplitReplicated(_))
    }

    /// Colors added on top of the originals' palette: `2m` or `3m`.
    pub fn per_edge(self) -> usize {
        if self.is_bipartite() {
            2
        } else {
            3
        }
    }
}

/// The two gadget families, without replication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Bipartite,
    Split,
}

impl Family {
    pub fn kind(self, copies: usize) -> GadgetKind {
        match (self, copies) {
            (Family::Bipartite, 1) => GadgetKind::Bipartite,
            (Family::Split, 1) => GadgetKind::Split,
            (Family::Bipartite, k) => GadgetKind::BipartiteReplicated(k),
            (Family::Split, k) => GadgetKind::SplitReplicated(k),
        }
    }

    fn plain(self) -> GadgetKind {
        self.kind(1)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Bipartite => "bipartite",
            Family::Split => "split",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// Copy `copy` (1-based) of source vertex `vertex`.
    Original { vertex: Vertex, copy: usize },
    /// S-vertex `index` (1..=3) of a source edge.
    S { edge: (Vertex, Vertex), index: usize },
    /// T-vertex `index` (1..=2) of a source edge.
    T { edge: (Vertex, Vertex), index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetResult {
    pub graph: Graph,
    pub kind: GadgetKind,
    pub role_map: Vec<Role>,
    pub source_vertex_count: usize,
    pub source_edge_count: usize,
}

fn check_source(g: &Graph) -> Result<Vec<(Vertex, Vertex)>> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v + 1));
    }
    Ok(g.edges().collect())
}

pub fn bipartite_gadget(g: &Graph) -> Result<GadgetResult> {
    build_gadget(g, GadgetKind::Bipartite)
}

pub fn split_gadget(g: &Graph) -> Result<GadgetResult> {
    build_gadget(g, GadgetKind::Split)
}

pub fn replicated_gadget(g: &Graph, k: usize, family: Family) -> Result<GadgetResult> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    build_gadget(
        g,
        match family {
            Family::Bipartite => GadgetKind::BipartiteReplicated(k),
            Family::Split => GadgetKind::SplitReplicated(k),
        },
    )
}

/// Builds the gadget of any kind; `k` copies for the replicated kinds.
pub fn build_gadget(g: &Graph, kind: GadgetKind) -> Result<GadgetResult> {
    let edges = check_source(g)?;
    let (n, m, k) = (g.n(), edges.len(), kind.copies());
    let s_per = kind.per_edge();
    let t_per = if kind.is_bipartite() { 2 } else { 0 };
    let mut role_map = Vec::with_capacity(k * n + (s_per + t_per) * m);
    for copy in 1..=k {
        role_map.extend(g.vertices().map(|vertex| Role::Original { vertex, copy }));
    }
    let s_base = k * n;
    for &edge in &edges {
        role_map.extend((1..=s_per).map(|index| Role::S { edge, index }));
    }
    let t_base = s_base + s_per * m;
    for &edge in &edges {
        role_map.extend((1..=t_per).map(|index| Role::T { edge, index }));
    }

    let mut out: Vec<(Vertex, Vertex)> = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for j in 0..s_per {
            let s = s_base + i * s_per + j;
            for copy in 0..k {
                out.push((copy * n + a, s));
                out.push((copy * n + b, s));
            }
        }
    }
    let s_all = s_base..t_base;
    if kind.is_bipartite() {
        for s in s_all {
            for t in t_base..role_map.len() {
                out.push((s, t));
            }
        }
    } else {
        for s in s_all.clone() {
            for s2 in s + 1..t_base {
                out.push((s, s2));
            }
        }
    }
    let graph = Graph::from_edges(role_map.len(), &out)?;
    Ok(GadgetResult { graph, kind, role_map, source_vertex_count: n, source_edge_count: m })
}

impl GadgetResult {
    pub fn originals(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.role_map.len()).filter(|&i| matches!(self.role_map[i], Role::Original { .. }))
    }

    pub fn s_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.role_map.len()).filter(|&i| matches!(self.role_map[i], Role::S { .. }))
    }

    pub fn t_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.role_map.len()).filter(|&i| matches!(self.role_map[i], Role::T { .. }))
    }

    /// Sidecar lines `gadget_vertex role source`, 1-based.
    pub fn role_map_text(&self) -> String {
        let mut out = String::new();
        for (i, role) in self.role_map.iter().enumerate() {
            let (name, source) = match *role {
                Role::Original { vertex, copy } => {
                    let src = if self.kind.is_replicated() {
                        format!("{}@{copy}", vertex + 1)
                    } else {
                        (vertex + 1).to_string()
                    };
                    ("orig", src)
                }
                Role::S { edge, index } => (["s", "s'", "s''"][index - 1], format!("{}-{}", edge.0 + 1, edge.1 + 1)),
                Role::T { edge, index } => (["t", "t'"][index - 1], format!("{}-{}", edge.0 + 1, edge.1 + 1)),
            };
            out.push_str(&format!("{} {name} {source}\n", i + 1));
        }
        out
    }

    /// The split partition holds: S-vertices form a clique, originals an
    /// independent set.
    pub fn is_split_partitioned(&self) -> bool {
        let s: Vec<Vertex> = self.s_vertices().collect();
        let o: Vec<Vertex> = self.originals().collect();
        s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| self.graph.has_edge(a, b)))
            && o.iter().enumerate().all(|(i, &a)| o[i + 1..].iter().all(|&b| !self.graph.has_edge(a, b)))
            && self.t_vertices().next().is_none()
    }

    /// Bipartite with parts originals ∪ T and S.
    pub fn is_bipartite_partitioned(&self) -> bool {
        let side: Vec<bool> = self.role_map.iter().map(|r| matches!(r, Role::S { .. })).collect();
        self.graph.edges().all(|(a, b)| side[a] != side[b])
    }
}

/// Gadget coloring built from a proper coloring of the source graph: copy
/// `j` of `v` gets `c(v) + (j − 1)·χ`, the S-vertices get fresh distinct
/// colors and each T-vertex repeats the color of the matching S-vertex.
pub fn forward_coloring(g: &Graph, c: &VertexColoring, gadget: &GadgetResult) -> Result<VertexColoring> {
    if c.len() != g.n() || gadget.source_vertex_count != g.n() || gadget.source_edge_count != g.m() {
        return Err(Error::Precondition("coloring and gadget do not match the source graph".into()));
    }
    if let Some((a, b)) = g.edges().find(|&(a, b)| c.get(a) == c.get(b)) {
        return Err(Error::NotProper(a + 1, b + 1));
    }
    let c = c.normalized();
    let k = c.palette_size() as Color;
    let copies = gadget.kind.copies() as Color;
    let base = k * copies;
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let per = gadget.kind.per_edge();
    let s_color = |edge: (Vertex, Vertex), index: usize| {
        let i = edges.binary_search(&edge).expect("gadget edge comes from the source");
        base + (i * per + index) as Color
    };
    let colors = gadget
        .role_map
        .iter()
        .map(|role| match *role {
            Role::Original { vertex, copy } => c.get(vertex) + (copy as Color - 1) * k,
            Role::S { edge, index } | Role::T { edge, index } => s_color(edge, index),
        })
        .collect();
    VertexColoring::new(colors)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BackwardColoring {
    Proper(VertexColoring),
    KFold(Vec<BTreeSet<Color>>),
}

/// Reads a source coloring back off a valid gadget coloring: the originals'
/// colors, or for replicated gadgets the set of colors over each vertex's
/// copies.
pub fn backward_coloring(gadget: &GadgetResult, c: &VertexColoring) -> Result<BackwardColoring> {
    if let Some((x, y)) = first_failing_pair(&gadget.graph, c)? {
        return Err(Error::NotRainbowDisconnected(x + 1, y + 1));
    }
    let n = gadget.source_vertex_count;
    let k = gadget.kind.copies();
    let mut sets = vec![BTreeSet::new(); n];
    for (i, role) in gadget.role_map.iter().enumerate() {
        if let Role::Original { vertex, .. } = *role {
            sets[vertex].insert(c.get(i));
        }
    }
    let source_edges: BTreeSet<(Vertex, Vertex)> = gadget
        .role_map
        .iter()
        .filter_map(|r| match *r {
            Role::S { edge, .. } => Some(edge),
            _ => None,
        })
        .collect();
    for &(a, b) in &source_edges {
        if !sets[a].is_disjoint(&sets[b]) {
            return Err(Error::NotProper(a + 1, b + 1));
        }
    }
    if let Some(v) = sets.iter().position(|s| s.len() != k) {
        return Err(Error::Precondition(format!("copies of vertex {} do not carry {k} distinct colors", v + 1)));
    }
    if gadget.kind.is_replicated() {
        Ok(BackwardColoring::KFold(sets))
    } else {
        let colors = sets.iter().map(|s| *s.iter().next().expect("one color")).collect();
        Ok(BackwardColoring::Proper(VertexColoring::new(colors)?))
    }
}

/// The rvd of a gadget: exhaustive when the gadget is within the cap,
/// otherwise the conflict chromatic number below and a verified forward
/// coloring above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetValue {
    pub lower: usize,
    pub upper: usize,
    /// The value came from an exhaustive solve rather than from the
    /// conflict lower bound meeting the forward coloring.
    pub exact: bool,
}

impl GadgetValue {
    pub fn value(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

pub fn gadget_rvd(g: &Graph, gadget: &GadgetResult, cap: usize) -> Result<GadgetValue> {
    let h = &gadget.graph;
    let forward = forward_coloring(g, &optimal_coloring(g), gadget)?;
    if let Some((x, y)) = first_failing_pair(h, &forward)? {
        return Err(Error::NotRainbowDisconnected(x + 1, y + 1));
    }
    let upper = forward.palette_size();
    let lower = chromatic_number(&h.conflict_graph()).max(1);
    if h.n() <= cap {
        let r = rvd_exact_with(h, &ExactConfig::with_cap(cap))?;
        return Ok(GadgetValue { lower: r.value, upper: r.value, exact: true });
    }
    Ok(GadgetValue { lower, upper, exact: false })
}

/// Consequence of the conflict law: in an accepted coloring of a
/// bipartite gadget the T-vertices are rainbow and share no color with the
/// originals.
pub fn t_vertices_separated(gadget: &GadgetResult, c: &VertexColoring) -> bool {
    let t: Vec<Color> = gadget.t_vertices().map(|v| c.get(v)).collect();
    let distinct: BTreeSet<Color> = t.iter().copied().collect();
    distinct.len() == t.len() && gadget.originals().all(|v| !distinct.contains(&c.get(v)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub family: Family,
    pub k: usize,
    pub chromatic: usize,
    pub threshold: usize,
    pub gadget: GadgetValue,
    pub chi_at_most_k: bool,
    pub rvd_at_most_threshold: bool,
}

impl RoundtripReport {
    pub fn agrees(&self) -> bool {
        self.chi_at_most_k == self.rvd_at_most_threshold
    }
}

/// Compares `χ(G) ≤ k` with `rvd(gadget) ≤ k + c·m`, each side computed on
/// its own.
pub fn roundtrip_check(g: &Graph, k: usize, family: Family, cap: usize) -> Result<RoundtripReport> {
    let gadget = build_gadget(g, family.plain())?;
    let chromatic = chromatic_number(g);
    let value = gadget_rvd(g, &gadget, cap)?;
    let threshold = k + family.plain().per_edge() * g.m();
    let rvd = value.value().ok_or_else(|| Error::CapExceeded("gadget value undetermined".into()))?;
    Ok(RoundtripReport {
        family,
        k,
        chromatic,
        threshold,
        gadget: value,
        chi_at_most_k: chromatic <= k,
        rvd_at_most_threshold: rvd <= threshold,
    })
}

/// An exact rational `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Ratio {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(num, den).max(1);
        Ratio { num: num / g, den: den / g }
    }

    pub fn int(v: usize) -> Ratio {
        Ratio::new(v as u64, 1)
    }

    /// `self ≤ other`, by cross-multiplication.
    pub fn le(self, other: Ratio) -> bool {
        self.num as u128 * other.den as u128 <= other.num as u128 * self.den as u128
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub family: Family,
    pub k: usize,
    /// `kn/α + c·m`.
    pub independence_bound: Ratio,
    /// `χ_k + c·m`.
    pub kfold_bound: usize,
    /// rvd of the replicated gadget.
    pub gadget: GadgetValue,
    /// `k·χ + c·m`.
    pub coloring_bound: usize,
    /// Every computed inequality of the chain, in order, with whether it
    /// holds and whether it is tight.
    pub links: Vec<ChainLink>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub tight: bool,
}

impl ChainReport {
    pub fn passes(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }
}

/// Evaluates `kn/α + cm ≤ χ_k + cm ≤ rvd(H) ≤ kχ + cm` for the gadget
/// replicated `k` times, where `c` is 2 (bipartite) or 3 (split).
pub fn chain_check(g: &Graph, k: usize, family: Family, cap: usize) -> Result<ChainReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let gadget = build_gadget(g, family.kind(k))?;
    let cm = family.plain().per_edge() * g.m();
    let alpha = independence_number(g);
    let independence_bound = Ratio::new((k * g.n() + cm * alpha) as u64, alpha as u64);
    let kfold = kfold_chromatic_number_with(g, k, KfoldCap { max_n: 7, max_k: 3 })?;
    let kfold_bound = kfold + cm;
    let value = gadget_rvd(g, &gadget, cap)?;
    let coloring_bound = k * chromatic_number(g) + cm;

    let mut links = Vec::new();
    let mut link = |lhs: String, a: Ratio, rhs: String, b: Ratio| {
        links.push(ChainLink { lhs, rhs, holds: a.le(b), tight: a == b });
    };
    let ind = format!("kn/α+cm={independence_bound}");
    let kf = format!("χ_k+cm={kfold_bound}");
    let col = format!("kχ+cm={coloring_bound}");
    link(ind, independence_bound, kf.clone(), Ratio::int(kfold_bound));
    let (lo, hi) = (value.lower, value.upper);
    let rvd_lo = if value.exact || lo == hi { format!("rvd(H)={lo}") } else { format!("rvd(H)≥{lo}") };
    let rvd_hi = if value.exact || lo == hi { format!("rvd(H)={hi}") } else { format!("rvd(H)≤{hi}") };
    // With only bounds on rvd(H), the links are checked against the bound
    // that can refute them.
    link(kf, Ratio::int(kfold_bound), rvd_hi, Ratio::int(hi));
    link(rvd_lo, Ratio::int(lo), col, Ratio::int(coloring_bound));
    Ok(ChainReport { family, k, independence_bound, kfold_bound, gadget: value, coloring_bound, links })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_coloring;

    fn k3() -> Graph {
        Graph::complete(3)
    }

    #[test]
    fn sizes() {
        assert_eq!(bipartite_gadget(&Graph::complete(2)).unwrap().graph.n(), 6);
        let b = bipartite_gadget(&k3()).unwrap();
        assert_eq!((b.graph.n(), b.graph.m()), (15, 48));
        assert_eq!(bipartite_gadget(&Graph::path(3)).unwrap().graph.n(), 11);
        let s = split_gadget(&Graph::complete(2)).unwrap();
        assert_eq!(s.graph.n(), 5);
        assert_eq!(s.s_vertices().count(), 3);
        assert_eq!(split_gadget(&k3()).unwrap().graph.n(), 12);
        assert_eq!(split_gadget(&Graph::star(3)).unwrap().graph.n(), 13);
        assert_eq!(replicated_gadget(&Graph::complete(2), 2, Family::Bipartite).unwrap().graph.n(), 8);
        assert_eq!(replicated_gadget(&k3(), 3, Family::Bipartite).unwrap().graph.n(), 21);
        assert_eq!(replicated_gadget(&k3(), 3, Family::Split).unwrap().graph.n(), 18);
    }

    #[test]
    fn structure() {
        for g in [Graph::complete(2), Graph::path(3), k3(), Graph::star(3)] {
            let b = bipartite_gadget(&g).unwrap();
            assert!(b.is_bipartite_partitioned() && b.graph.is_bipartite());
            assert!(split_gadget(&g).unwrap().is_split_partitioned());
        }
    }

    #[test]
    fn input_errors() {
        assert_eq!(bipartite_gadget(&Graph::empty(3)).unwrap_err(), Error::Edgeless);
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(split_gadget(&g).unwrap_err(), Error::IsolatedVertex(3));
    }

    #[test]
    fn forward_colorings_verify() {
        let cases = [
            (Graph::complete(2), GadgetKind::Bipartite, 4),
            (k3(), GadgetKind::Split, 12),
            (Graph::path(3), GadgetKind::Bipartite, 6),
        ];
        for (g, kind, palette) in cases {
            let gadget = build_gadget(&g, kind).unwrap();
            let c = forward_coloring(&g, &optimal_coloring(&g), &gadget).unwrap();
            assert_eq!(c.palette_size(), palette);
            assert!(verify_coloring(&gadget.graph, &c).unwrap().verdict);
        }
        let bad = VertexColoring::uniform(2);
        let gadget = bipartite_gadget(&Graph::complete(2)).unwrap();
        assert_eq!(forward_coloring(&Graph::complete(2), &bad, &gadget).unwrap_err(), Error::NotProper(1, 2));
    }

    #[test]
    fn round_trips() {
        let gadget = bipartite_gadget(&k3()).unwrap();
        let c = forward_coloring(&k3(), &optimal_coloring(&k3()), &gadget).unwrap();
        match backward_coloring(&gadget, &c).unwrap() {
            BackwardColoring::Proper(p) => {
                assert!(p.is_proper_on(&k3()));
                assert_eq!(p.palette_size(), 3);
            }
            other => panic!("{other:?}"),
        }
        let k2 = Graph::complete(2);
        let rep = replicated_gadget(&k2, 2, Family::Bipartite).unwrap();
        let c = forward_coloring(&k2, &optimal_coloring(&k2), &rep).unwrap();
        match backward_coloring(&rep, &c).unwrap() {
            BackwardColoring::KFold(sets) => {
                assert!(sets.iter().all(|s| s.len() == 2));
                assert!(sets[0].is_disjoint(&sets[1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn roundtrip_examples() {
        let k2 = Graph::complete(2);
        let r = roundtrip_check(&k2, 2, Family::Bipartite, 12).unwrap();
        assert!(r.agrees() && r.chi_at_most_k);
        assert_eq!(r.gadget.value(), Some(4));
        let r = roundtrip_check(&k2, 1, Family::Bipartite, 12).unwrap();
        assert!(r.agrees() && !r.chi_at_most_k);
        let r = roundtrip_check(&k2, 2, Family::Split, 12).unwrap();
        assert!(r.agrees());
        assert_eq!(r.gadget.value(), Some(5));
    }

    #[test]
    fn chain_examples() {
        let k2 = Graph::complete(2);
        let r = chain_check(&k2, 1, Family::Bipartite, 12).unwrap();
        assert!(r.passes());
        assert_eq!((r.independence_bound, r.kfold_bound, r.coloring_bound), (Ratio::int(4), 4, 4));
        assert_eq!(r.gadget.value(), Some(4));
        assert!(r.links.iter().all(|l| l.tight));
        let r = chain_check(&k3(), 1, Family::Split, 12).unwrap();
        assert!(r.passes());
        assert_eq!((r.independence_bound, r.kfold_bound, r.coloring_bound), (Ratio::int(12), 12, 12));
        assert_eq!(r.gadget.value(), Some(12));
        let r = chain_check(&k2, 2, Family::Bipartite, 12).unwrap();
        assert!(r.passes());
        assert_eq!((r.independence_bound, r.kfold_bound, r.coloring_bound), (Ratio::int(6), 6, 6));
    }

    #[test]
    fn role_map_lines() {
        let text = split_gadget(&Graph::complete(2)).unwrap().role_map_text();
        assert_eq!(text, "1 orig 1\n2 orig 2\n3 s 1-2\n4 s' 1-2\n5 s'' 1-2\n");
        let rep = replicated_gadget(&Graph::complete(2), 2, Family::Bipartite).unwrap().role_map_text();
        assert!(rep.starts_with("1 orig 1@1\n2 orig 2@1\n3 orig 1@2\n"));
        assert!(rep.ends_with("8 t' 1-2\n"));
    }
}
