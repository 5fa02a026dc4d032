use rvd_core::blocks::block_decomposition;
use rvd_core::colorer::{color_k4mf, lift_contraction_coloring};
use rvd_core::exact::{bounds, kfold_chromatic_number, rvd_exact, rvd_exact_with, ExactConfig};
use rvd_core::generate::{
    connected_graphs_upto, connected_k4mf_graphs_upto, random_connected_graph,
    random_two_connected_with_adjacent_two_vertices,
};
use rvd_core::oracle::{brute_has_k4_minor, brute_kfold, naive_is_rainbow_disconnected, naive_rvd};
use rvd_core::recognize::{
    adjacent_two_vertices, find_structure, is_k4_minor_free, selection_vertices, StructureLocator,
};
use rvd_core::verify::verify_coloring;
use rvd_core::Graph;

#[test]
fn recognizer_matches_minor_oracle() {
    for g in connected_graphs_upto(7) {
        assert_eq!(is_k4_minor_free(&g), !brute_has_k4_minor(&g), "{g:?}");
    }
    for seed in 0..40 {
        let n = 8 + seed as usize % 2;
        let g = random_connected_graph(seed, n, 0.15 + 0.01 * seed as f64);
        assert_eq!(is_k4_minor_free(&g), !brute_has_k4_minor(&g), "{g:?}");
    }
}

#[test]
fn exact_matches_naive_enumeration() {
    for g in connected_graphs_upto(5) {
        let r = rvd_exact(&g).unwrap();
        assert_eq!(r.value, naive_rvd(&g), "{g:?}");
        assert!(naive_is_rainbow_disconnected(&g, r.witness.as_slice()));
    }
    for seed in 0..6 {
        let g = random_connected_graph(seed, 6, 0.4);
        assert_eq!(rvd_exact(&g).unwrap().value, naive_rvd(&g), "{g:?}");
    }
}

#[test]
fn kfold_matches_brute_force() {
    for g in connected_graphs_upto(5) {
        for k in 1..=2 {
            assert_eq!(kfold_chromatic_number(&g, k).unwrap(), brute_kfold(&g, k), "{g:?} k={k}");
        }
    }
    assert_eq!(kfold_chromatic_number(&Graph::cycle(5), 3).unwrap(), brute_kfold(&Graph::cycle(5), 3));
}

#[test]
fn bounds_sandwich_exact_values() {
    for g in connected_graphs_upto(7) {
        let b = bounds(&g).unwrap();
        let v = rvd_exact(&g).unwrap().value;
        assert!(b.lower <= v && v <= b.upper, "{g:?}: {} ≤ {v} ≤ {}", b.lower, b.upper);
        if let Some(hint) = b.block_max_hint {
            assert!(hint <= v);
        }
    }
}

#[test]
fn block_edges_partition() {
    for g in connected_graphs_upto(7) {
        let d = block_decomposition(&g).unwrap();
        let mut count = 0;
        for b in &d.blocks {
            let (sub, _) = g.induced_subgraph(b);
            count += sub.m();
        }
        assert_eq!(count, g.m(), "{g:?}");
    }
}

#[test]
fn trichotomy_is_exhaustive() {
    for g in connected_k4mf_graphs_upto(8) {
        let s = find_structure(&g).unwrap();
        if g.min_degree() >= 2 && adjacent_two_vertices(&g).is_none() {
            assert!(matches!(s, StructureLocator::HubVertex(ref h) if h.is_valid_for(&g)), "{g:?}");
        }
    }
}

#[test]
fn t_and_m_sets_agree() {
    for g in connected_k4mf_graphs_upto(7) {
        for u in g.vertices() {
            for x in g.t_set(u).unwrap() {
                if !g.has_edge(u, x) {
                    assert!(!g.m_set(u, x).unwrap().is_empty(), "{g:?} u={u} x={x}");
                }
            }
        }
    }
}

/// The hub-selection claim is not universal: this graph is 2-connected,
/// K4-minor-free, has no adjacent 2-vertices, and every hub has both members
/// of its T-set with t = 4. The colorer still stays within Δ.
#[test]
fn hub_selection_claim_can_fail() {
    let edges =
        [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (1, 5), (1, 6), (1, 7), (2, 5), (3, 6), (4, 7)];
    let g = Graph::from_edges(8, &edges).unwrap();
    assert!(is_k4_minor_free(&g) && g.min_degree() >= 2 && adjacent_two_vertices(&g).is_none());
    assert!(block_decomposition(&g).unwrap().is_two_connected());
    assert!(selection_vertices(&g).is_empty());
    let (c, trace) = color_k4mf(&g).unwrap();
    assert!(verify_coloring(&g, &c).unwrap().verdict);
    assert!(c.palette_size() <= g.max_degree());
    assert_eq!(trace.fallbacks(), 0);

    let mut empty = 0;
    let mut eligible = 0;
    for g in connected_k4mf_graphs_upto(9) {
        if g.min_degree() < 2
            || adjacent_two_vertices(&g).is_some()
            || !block_decomposition(&g).unwrap().is_two_connected()
        {
            continue;
        }
        eligible += 1;
        if selection_vertices(&g).is_empty() {
            empty += 1;
            let (c, _) = color_k4mf(&g).unwrap();
            assert!(verify_coloring(&g, &c).unwrap().verdict && c.palette_size() <= g.max_degree());
        }
    }
    println!("selection claim empty on {empty} of {eligible} eligible graphs");
    assert!(empty >= 1);
}

#[test]
fn colorer_gap_against_exact() {
    let mut total = 0.0;
    let mut worst: f64 = 1.0;
    let corpus = connected_k4mf_graphs_upto(8);
    for g in &corpus {
        let (c, _) = color_k4mf(g).unwrap();
        let exact = rvd_exact(g).unwrap().value;
        assert!(c.palette_size() >= exact);
        let ratio = c.palette_size() as f64 / exact as f64;
        total += ratio;
        worst = worst.max(ratio);
    }
    println!("colorer/exact ratio: mean {:.3}, worst {worst:.3}", total / corpus.len() as f64);
}

#[test]
fn lifted_colorings_verify() {
    for seed in 0..60 {
        let g = random_two_connected_with_adjacent_two_vertices(seed, 9);
        let (u, v) = adjacent_two_vertices(&g).unwrap();
        let (h, _) = g.contract_edge(u, v).unwrap();
        let c_h = rvd_exact(&h).unwrap().witness;
        let c = lift_contraction_coloring(&g, u, v, &c_h).unwrap();
        assert!(verify_coloring(&g, &c).unwrap().verdict, "{g:?}");
        assert!(c.palette_size() <= c_h.palette_size().max(2));
    }
}

#[test]
fn witnesses_validate_independently() {
    for g in connected_graphs_upto(6).into_iter().step_by(3) {
        let c = rvd_exact_with(&g, &ExactConfig::default()).unwrap().witness;
        let report = verify_coloring(&g, &c).unwrap();
        assert!(report.verdict);
        for w in report.witnesses.values() {
            assert!(w.validate(&g, &c));
        }
    }
}
