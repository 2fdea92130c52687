mod common;

use num_rational::Ratio;
use proptest::prelude::*;

use recolor::enumerate::{canonical_code, enumerate_graphs, parse_graph6, to_graph6};
use recolor::error::Error;
use recolor::graph::{self, Matching};
use recolor::Graph;

fn small_graphs(n_max: usize) -> Vec<Graph> {
    (1..=n_max).flat_map(|n| enumerate_graphs(n, false).unwrap()).collect()
}

#[test]
fn construction_rejects_bad_input() {
    assert_eq!(Graph::new(0, []), Err(Error::EmptyGraph));
    assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::BadEdge(1, 1, _))));
    assert!(matches!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::BadEdge(..))));
    assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::BadEdge(..))));
    assert!(Graph::cycle(2).is_err());
}

#[test]
fn matching_number_matches_brute_force() {
    for g in small_graphs(7) {
        let m = graph::max_matching(&g);
        graph::check_matching(&g, &m).unwrap();
        assert_eq!(m.len(), common::matching_number(&g), "{:?}", g.edges());
    }
    assert_eq!(graph::matching_number(&Graph::petersen()), 5);
}

#[test]
fn check_matching_catches_overlap() {
    let g = Graph::path(3).unwrap();
    let bad = Matching { edges: vec![(0, 1), (1, 2)] };
    assert!(matches!(graph::check_matching(&g, &bad), Err(Error::NotMatching(_))));
    let non_edge = Matching { edges: vec![(0, 2)] };
    assert!(graph::check_matching(&g, &non_edge).is_err());
}

#[test]
fn vertex_cover_is_lex_least_minimum() {
    for g in small_graphs(7) {
        let c = graph::min_vertex_cover(&g);
        assert_eq!(c.vertices, common::min_cover(&g), "{:?}", g.edges());
        // Gallai: α + τ = n.
        assert_eq!(graph::cover_number(&g) + common::independence_number(&g), g.n());
    }
}

#[test]
fn edmonds_gallai_examples() {
    let eg = graph::edmonds_gallai(&Graph::path(3).unwrap());
    assert_eq!((eg.v1, eg.v2, eg.v3), (vec![0, 2], vec![1], vec![]));
    let eg = graph::edmonds_gallai(&Graph::cycle(5).unwrap());
    assert_eq!(eg.v1.len(), 5);
    assert_eq!(eg.components_of_v1.len(), 1);
    let eg = graph::edmonds_gallai(&Graph::complete(4).unwrap());
    assert_eq!(eg.v3, vec![0, 1, 2, 3]);
}

#[test]
fn edmonds_gallai_sets_match_brute_force() {
    for g in small_graphs(6) {
        let eg = graph::edmonds_gallai(&g);
        assert_eq!(eg.v1, common::avoidable(&g), "{:?}", g.edges());
        assert_eq!(eg.components_of_v1, common::components_of(&g, &eg.v1));
    }
}

#[test]
fn factor_critical_matches_brute_force() {
    for g in small_graphs(7) {
        assert_eq!(graph::is_factor_critical(&g), common::factor_critical(&g), "{:?}", g.edges());
    }
    assert!(graph::is_factor_critical(&Graph::complete(5).unwrap()));
    assert!(!graph::is_factor_critical(&Graph::path(3).unwrap()));
}

#[test]
fn chromatic_number_matches_brute_force() {
    for g in small_graphs(6) {
        let (k, col) = graph::optimal_colouring(&g);
        assert_eq!(k, common::chromatic_number(&g), "{:?}", g.edges());
        assert!(g.edges().iter().all(|&(u, v)| col[u] != col[v]));
        assert!(col.iter().all(|&c| c < k));
    }
    assert_eq!(graph::chromatic_number(&Graph::petersen()), 3);
}

#[test]
fn degeneracy_is_max_min_degree() {
    for g in small_graphs(6) {
        let n = g.n();
        let brute = (1u32..1 << n)
            .map(|mask| {
                let vs: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                vs.iter()
                    .map(|&v| g.neighbours(v).iter().filter(|&&w| mask & (1 << w) != 0).count())
                    .min()
                    .unwrap()
            })
            .max()
            .unwrap();
        assert_eq!(graph::degeneracy(&g), brute);
    }
}

#[test]
fn mad_values() {
    assert_eq!(graph::mad(&Graph::petersen()).unwrap(), Ratio::new(3, 1));
    assert_eq!(graph::mad(&Graph::path(5).unwrap()).unwrap(), Ratio::new(8, 5));
    assert_eq!(graph::mad(&Graph::empty(3).unwrap()).unwrap(), Ratio::new(0, 1));
    // K4 plus a pendant: the K4 dominates.
    let g = Graph::new(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
    assert_eq!(graph::mad(&g).unwrap(), Ratio::new(3, 1));
    assert!(matches!(graph::mad(&Graph::empty(25).unwrap()), Err(Error::TooLarge(..))));
}

#[test]
fn components_of_disjoint_union() {
    let g = Graph::new(6, [(0, 1), (2, 3), (3, 4)]).unwrap();
    assert_eq!(graph::components(&g), vec![vec![0, 1], vec![2, 3, 4], vec![5]]);
}

#[test]
fn class_tests() {
    assert!(Graph::path(4).unwrap().is_tree());
    assert!(!Graph::cycle(4).unwrap().is_forest());
    assert!(Graph::cycle(5).unwrap().is_cycle());
    assert!(Graph::cycle(5).unwrap().is_cactus());
    assert!(!Graph::complete(4).unwrap().is_cactus());
    let (a, b) = Graph::complete_bipartite(2, 3).unwrap().complete_bipartite_sides().unwrap();
    assert_eq!((a.len(), b.len()), (2, 3));
    assert!(Graph::cycle(6).unwrap().complete_bipartite_sides().is_none());
    assert!(Graph::cycle(5).unwrap().bipartition().is_none());
    // Two triangles sharing a vertex form a cactus.
    let bowtie = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
    assert!(bowtie.is_cactus());
}

#[test]
fn enumeration_counts() {
    let all: Vec<usize> = (1..=7).map(|n| enumerate_graphs(n, false).unwrap().len()).collect();
    let conn: Vec<usize> = (1..=7).map(|n| enumerate_graphs(n, true).unwrap().len()).collect();
    assert_eq!(all, vec![1, 2, 4, 11, 34, 156, 1044]);
    assert_eq!(conn, vec![1, 1, 2, 6, 21, 112, 853]);
    assert!(enumerate_graphs(0, false).is_err());
    assert!(enumerate_graphs(9, false).is_err());
}

#[test]
fn canonical_code_ignores_labels() {
    let a = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let b = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
    let c = Graph::star(3).unwrap();
    assert_eq!(canonical_code(&a), canonical_code(&b));
    assert_ne!(canonical_code(&a), canonical_code(&c));
}

#[test]
fn graph6_known_strings() {
    assert_eq!(to_graph6(&Graph::complete(3).unwrap()), "Bw");
    assert_eq!(to_graph6(&Graph::complete(4).unwrap()), "C~");
    let p = parse_graph6("IheA@GUAo").unwrap();
    assert_eq!((p.n(), p.m()), (10, 15));
    assert!((0..10).all(|v| p.degree(v) == 3));
    assert_eq!(canonical_code(&p), canonical_code(&Graph::petersen()));
    assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), Graph::complete(4).unwrap());
    assert!(parse_graph6("").is_err());
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len())
            .prop_map(move |keep| Graph::new(n, pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e)).unwrap())
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph()) {
        prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn matching_and_cover_bounds(g in arb_graph()) {
        let mu = graph::matching_number(&g);
        let tau = graph::cover_number(&g);
        prop_assert!(mu <= tau && tau <= 2 * mu);
        let cover = graph::min_vertex_cover(&g).vertices;
        prop_assert!(g.edges().iter().all(|(u, v)| cover.contains(u) || cover.contains(v)));
        prop_assert_eq!(mu, common::matching_number(&g));
    }

    #[test]
    fn edmonds_gallai_identity(g in arb_graph()) {
        let eg = graph::edmonds_gallai(&g);
        let mu = graph::matching_number(&g);
        prop_assert_eq!(2 * mu, g.n() - eg.components_of_v1.len() + eg.v2.len());
    }
}
