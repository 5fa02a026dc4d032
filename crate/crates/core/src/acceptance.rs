//! The twelve acceptance checks, shared by the `acceptance` test target and
//! the CLI `selftest` command. Every check is seeded and deterministic.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colorer::color_k4mf;
use crate::exact::classic::{chromatic_number, optimal_coloring};
use crate::exact::rvd::{rvd_exact_with, ExactConfig, DEFAULT_CAP};
use crate::gadgets::{
    bipartite_gadget, chain_check, forward_coloring, gadget_rvd, replicated_gadget, split_gadget, t_vertices_separated,
    Family, GadgetResult,
};
use crate::generate::{
    all_trees, connected_graphs_upto, connected_k4mf_graphs_upto, generate_sp_graph, random_connected_graph,
    random_graph_with_cut_vertex, random_two_connected_with_adjacent_two_vertices,
};
use crate::graph::{Color, Graph, VertexColoring};
use crate::oracle::naive_is_rainbow_disconnected;
use crate::recognize::adjacent_two_vertices;
use crate::verify::verify_coloring;

#[derive(Clone, Copy, Debug)]
pub struct AcceptanceConfig {
    pub seed: u64,
    pub jobs: usize,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig { seed: 20_240_601, jobs: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<28} {} ({}; {:.2}s",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(limit) = self.limit {
            write!(f, " of {}s", limit.as_secs())?;
        }
        write!(f, ")")
    }
}

/// Optimal witnesses collected by the exact-solver checks, audited by the
/// conflict-law check.
#[derive(Default)]
pub struct WitnessLog {
    pub entries: Vec<(Graph, VertexColoring)>,
}

struct Tally {
    checked: usize,
    failed: usize,
    shown: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally { checked: 0, failed: 0, shown: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.shown.len() < 3 {
                self.shown.push(what());
            }
        }
    }

    fn finish(
        self,
        id: usize,
        name: &'static str,
        start: Instant,
        limit: Option<Duration>,
        extra: String,
    ) -> CriterionReport {
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let mut detail = format!("{} checks, {} failures", self.checked, self.failed);
        if !extra.is_empty() {
            detail.push_str("; ");
            detail.push_str(&extra);
        }
        if !self.shown.is_empty() {
            detail.push_str("; first: ");
            detail.push_str(&self.shown.join(" | "));
        }
        if !in_time {
            detail.push_str("; over time limit");
        }
        CriterionReport { id, name, passed: self.failed == 0 && in_time, detail, elapsed, limit }
    }
}

fn edges_of(g: &Graph) -> String {
    g.edges().map(|(a, b)| format!("{}-{}", a + 1, b + 1)).collect::<Vec<_>>().join(",")
}

fn cfg(c: &AcceptanceConfig) -> ExactConfig {
    ExactConfig { jobs: c.jobs, ..ExactConfig::default() }
}

/// Runs the exact solver, recording the witness and checking it is valid
/// with exactly `value` colors.
fn exact_value(g: &Graph, config: &ExactConfig, log: &mut WitnessLog, tally: &mut Tally) -> Option<usize> {
    match rvd_exact_with(g, config) {
        Ok(r) => {
            let verified = verify_coloring(g, &r.witness).map(|v| v.verdict).unwrap_or(false);
            tally.check(verified && r.witness.palette_size() == r.value, || format!("bad witness on {}", edges_of(g)));
            log.entries.push((g.clone(), r.witness));
            Some(r.value)
        }
        Err(e) => {
            tally.check(false, || format!("{e} on {}", edges_of(g)));
            None
        }
    }
}

pub fn tree_law(c: &AcceptanceConfig, log: &mut WitnessLog) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let config = cfg(c);
    for n in 2..=10 {
        for g in all_trees(n) {
            let v = exact_value(&g, &config, log, &mut t);
            t.check(v == Some(1), || format!("tree {} has rvd {v:?}", edges_of(&g)));
        }
    }
    let trees = t.checked;
    for g in connected_graphs_upto(7).into_iter().filter(|g| !g.is_tree()) {
        let v = exact_value(&g, &config, log, &mut t);
        t.check(v.is_some_and(|v| v >= 2), || format!("non-tree {} has rvd {v:?}", edges_of(&g)));
    }
    let extra = format!("{} tree checks, {} non-tree checks", trees, t.checked - trees);
    t.finish(1, "tree law", start, Some(Duration::from_secs(60)), extra)
}

pub fn cycle_law(c: &AcceptanceConfig, log: &mut WitnessLog) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 3..=10 {
        let v = exact_value(&Graph::cycle(n), &cfg(c), log, &mut t);
        t.check(v == Some(2), || format!("C{n} has rvd {v:?}"));
    }
    t.finish(2, "cycle law", start, Some(Duration::from_secs(60)), String::new())
}

pub fn sharpness(c: &AcceptanceConfig, log: &mut WitnessLog) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut values = Vec::new();
    for s in 2..=6 {
        let g = Graph::complete_bipartite(2, s);
        let v = exact_value(&g, &cfg(c), log, &mut t);
        values.push(format!("K2,{s}={}", v.map_or("?".into(), |v| v.to_string())));
        t.check(v == Some(s) && g.max_degree() == s, || format!("K2,{s} has rvd {v:?}"));
    }
    t.finish(3, "sharpness on K2,t", start, Some(Duration::from_secs(300)), values.join(" "))
}

pub fn delta_bound(c: &AcceptanceConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut small_fallbacks = 0;
    let mut large_fallbacks = 0;
    let check = |g: &Graph, t: &mut Tally| -> usize {
        match color_k4mf(g) {
            Ok((col, trace)) => {
                let verified = verify_coloring(g, &col).map(|v| v.verdict).unwrap_or(false);
                let within = col.palette_size() <= g.max_degree().max(1);
                t.check(verified && within, || {
                    format!("palette {} (Δ={}) valid={verified} on {}", col.palette_size(), g.max_degree(), edges_of(g))
                });
                trace.fallbacks()
            }
            Err(e) => {
                t.check(false, || format!("{e} on {}", edges_of(g)));
                0
            }
        }
    };
    for g in connected_k4mf_graphs_upto(8) {
        small_fallbacks += check(&g, &mut t);
    }
    let exhaustive = t.checked;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed ^ 4);
    for _ in 0..500 {
        let g = generate_sp_graph(rng.gen(), rng.gen_range(2..=40));
        let f = check(&g, &mut t);
        if g.n() <= 8 {
            small_fallbacks += f;
        } else {
            large_fallbacks += f;
        }
    }
    t.check(small_fallbacks == 0, || format!("{small_fallbacks} exact fallbacks on graphs with n ≤ 8"));
    let extra = format!(
        "{exhaustive} exhaustive + 500 seeded graphs, fallbacks n≤8: {small_fallbacks}, n>8: {large_fallbacks}"
    );
    t.finish(4, "constructive Δ-bound", start, None, extra)
}

pub fn block_law(c: &AcceptanceConfig, log: &mut WitnessLog) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed ^ 5);
    let whole = ExactConfig { use_blocks: false, ..cfg(c) };
    for _ in 0..200 {
        let g = random_graph_with_cut_vertex(rng.gen(), 9);
        let a = exact_value(&g, &cfg(c), log, &mut t);
        let b = exact_value(&g, &whole, log, &mut t);
        t.check(a.is_some() && a == b, || format!("blocks {a:?} vs whole {b:?} on {}", edges_of(&g)));
    }
    t.finish(5, "block law", start, None, "200 graphs".into())
}

pub fn contraction_law(c: &AcceptanceConfig, log: &mut WitnessLog) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed ^ 6);
    let mut strict = 0;
    for _ in 0..100 {
        let g = random_two_connected_with_adjacent_two_vertices(rng.gen(), 9);
        let Some((u, v)) = adjacent_two_vertices(&g) else {
            t.check(false, || format!("no adjacent 2-vertices in {}", edges_of(&g)));
            continue;
        };
        let h = match g.contract_edge(u, v) {
            Ok((h, _)) => h,
            Err(e) => {
                t.check(false, || format!("{e}"));
                continue;
            }
        };
        let a = exact_value(&g, &cfg(c), log, &mut t);
        let b = exact_value(&h, &cfg(c), log, &mut t);
        if let (Some(a), Some(b)) = (a, b) {
            strict += usize::from(a < b);
        }
        t.check(matches!((a, b), (Some(a), Some(b)) if a <= b), || {
            format!("rvd {a:?} > {b:?} after contracting {}", edges_of(&g))
        });
    }
    t.finish(6, "contraction law", start, None, format!("100 graphs, {strict} strict"))
}

pub fn conflict_law(log: &WitnessLog) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for (g, w) in &log.entries {
        t.check(w.is_proper_on(&g.conflict_graph()), || {
            format!("witness not proper on conflict graph of {}", edges_of(g))
        });
    }
    t.finish(7, "conflict law", start, None, "witnesses from criteria 1-6".into())
}

/// Gadget value with both the exact-or-bounds equality and the T-vertex
/// consequences of the conflict law checked.
fn gadget_equality(g: &Graph, gadget: &GadgetResult, per_edge: usize, require_exact: bool, t: &mut Tally) -> String {
    let target = chromatic_number(g) + per_edge * g.m();
    let forward = forward_coloring(g, &optimal_coloring(g), gadget);
    if gadget.kind.is_bipartite() {
        if let Ok(f) = &forward {
            t.check(t_vertices_separated(gadget, f), || "forward coloring mixes T-vertices".into());
        }
    }
    match gadget_rvd(g, gadget, DEFAULT_CAP) {
        Ok(v) => {
            t.check(v.value() == Some(target), || {
                format!("gadget of {} has rvd in {}..{}, want {target}", edges_of(g), v.lower, v.upper)
            });
            t.check(v.exact || !require_exact, || format!("gadget of {} was not solved exhaustively", edges_of(g)));
            format!("{}→{}{}", gadget.graph.n(), v.lower, if v.exact { "" } else { " (bounds)" })
        }
        Err(e) => {
            t.check(false, || format!("{e}"));
            "error".into()
        }
    }
}

fn with_accepted_witness(gadget: &GadgetResult, t: &mut Tally) {
    if gadget.graph.n() > DEFAULT_CAP || !gadget.kind.is_bipartite() {
        return;
    }
    if let Ok(r) = rvd_exact_with(&gadget.graph, &ExactConfig::default()) {
        t.check(t_vertices_separated(gadget, &r.witness), || "exact witness mixes T-vertices".into());
    }
}

pub fn bipartite_reduction(_c: &AcceptanceConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut parts = Vec::new();
    for (name, g) in [("K2", Graph::complete(2)), ("P3", Graph::path(3)), ("K3", Graph::complete(3))] {
        let gadget = bipartite_gadget(&g).expect("source graphs have edges");
        parts.push(format!("{name}:{}", gadget_equality(&g, &gadget, 2, name != "K3", &mut t)));
        with_accepted_witness(&gadget, &mut t);
    }
    t.finish(8, "bipartite reduction", start, Some(Duration::from_secs(600)), parts.join(" "))
}

pub fn split_reduction(_c: &AcceptanceConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut parts = Vec::new();
    for (name, g) in [("K2", Graph::complete(2)), ("P3", Graph::path(3))] {
        let gadget = split_gadget(&g).expect("source graphs have edges");
        parts.push(format!("{name}:{}", gadget_equality(&g, &gadget, 3, true, &mut t)));
    }
    t.finish(9, "split reduction", start, None, parts.join(" "))
}

pub fn chain(_c: &AcceptanceConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut parts = Vec::new();
    let cases = [(Graph::complete(2), "K2", 1), (Graph::complete(2), "K2", 2), (Graph::complete(3), "K3", 1)];
    for family in [Family::Bipartite, Family::Split] {
        for (g, name, k) in &cases {
            match chain_check(g, *k, family, DEFAULT_CAP) {
                Ok(r) => {
                    let tight = r.links.iter().filter(|l| l.tight).count();
                    t.check(r.passes(), || {
                        let broken: Vec<String> =
                            r.links.iter().filter(|l| !l.holds).map(|l| format!("{} ≤ {}", l.lhs, l.rhs)).collect();
                        format!("{family} {name} k={k}: {}", broken.join(", "))
                    });
                    parts.push(format!("{family}/{name}/k={k}: {tight}/{} tight", r.links.len()));
                }
                Err(e) => t.check(false, || format!("{family} {name} k={k}: {e}")),
            }
        }
    }
    t.finish(10, "chain check", start, None, parts.join(", "))
}

pub fn size_formulas(c: &AcceptanceConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed ^ 11);
    for _ in 0..20 {
        let n = rng.gen_range(2..=8);
        let g = random_connected_graph(rng.gen(), n, rng.gen_range(0.1..0.8));
        let m = g.m();
        for k in [rng.gen_range(1..=5), m] {
            for (family, per) in [(Family::Bipartite, 4), (Family::Split, 3)] {
                let size = replicated_gadget(&g, k, family).map(|r| r.graph.n());
                t.check(size == Ok(k * n + per * m), || format!("{family} k={k} on {}: {size:?}", edges_of(&g)));
            }
        }
    }
    t.finish(11, "size formulas", start, None, "20 random graphs, random k and k=|E|".into())
}

pub fn verifier_soundness(c: &AcceptanceConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed ^ 12);
    let mut accepted = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=8);
        let g = random_connected_graph(rng.gen(), n, rng.gen_range(0.0..0.9));
        let palette = rng.gen_range(1..=n) as Color;
        let colors: Vec<Color> = (0..n).map(|_| rng.gen_range(1..=palette)).collect();
        let naive = naive_is_rainbow_disconnected(&g, &colors);
        let fast = VertexColoring::new(colors.clone()).and_then(|col| verify_coloring(&g, &col)).map(|r| r.verdict);
        accepted += usize::from(naive);
        t.check(fast == Ok(naive), || {
            format!("verifier {fast:?} vs naive {naive} on {} with {colors:?}", edges_of(&g))
        });
    }
    t.finish(12, "verifier soundness", start, None, format!("{accepted} accepted by the oracle"))
}

/// Runs all twelve checks in order.
pub fn run_all(c: &AcceptanceConfig) -> Vec<CriterionReport> {
    let mut log = WitnessLog::default();
    let mut out = vec![
        tree_law(c, &mut log),
        cycle_law(c, &mut log),
        sharpness(c, &mut log),
        delta_bound(c),
        block_law(c, &mut log),
        contraction_law(c, &mut log),
    ];
    out.push(conflict_law(&log));
    out.push(bipartite_reduction(c));
    out.push(split_reduction(c));
    out.push(chain(c));
    out.push(size_formulas(c));
    out.push(verifier_soundness(c));
    out
}
