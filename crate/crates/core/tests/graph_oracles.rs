mod common;

use common::{exhaustive_clique_cover_number, exhaustive_clique_number, graph_from_code, pairs};
use dts::sim::stream_rng;
use dts::{erdos_renyi, greedy_clique_cover, max_clique, CommGraph};
use proptest::prelude::*;

#[test]
fn every_graph_up_to_five_vertices() {
    for m in 1..=5 {
        for code in 0..1u64 << pairs(m) {
            let g = graph_from_code(m, code);
            let cover = greedy_clique_cover(&g);
            assert!(cover.is_valid_for(&g));
            assert!(cover.len() >= exhaustive_clique_cover_number(&g));
            let clique = max_clique(&g);
            assert!(g.is_clique(&clique));
            assert_eq!(clique.len(), exhaustive_clique_number(&g), "m {m} code {code}");
        }
    }
}

#[test]
fn nested_erdos_renyi_graphs() {
    for seed in 0..5 {
        let sparse = erdos_renyi(20, 0.2, &mut stream_rng(seed, 0)).unwrap();
        let dense = erdos_renyi(20, 0.6, &mut stream_rng(seed, 0)).unwrap();
        assert!(sparse.edges().all(|(i, j)| dense.has_edge(i, j)));
    }
    assert_eq!(erdos_renyi(7, 0.0, &mut stream_rng(0, 0)).unwrap().edge_count(), 0);
    assert_eq!(erdos_renyi(7, 1.0, &mut stream_rng(0, 0)).unwrap(), CommGraph::complete(7));
}

#[test]
fn graph_file_errors_are_reported() {
    assert!(CommGraph::from_json("{\"m\": 2, \"edges\": [[0, 0]]}").is_err());
    assert!(CommGraph::from_json("{\"m\": 2, \"edges\": [[0, 2]]}").is_err());
    assert!(CommGraph::from_json("not json").is_err());
    let g = CommGraph::from_json("{\"m\": 3, \"edges\": [[1, 0], [0, 1]]}").unwrap();
    assert_eq!(g.edge_count(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_graphs_against_exhaustive(m in 1usize..=10, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = erdos_renyi(m, p, &mut stream_rng(seed, 0)).unwrap();
        let cover = greedy_clique_cover(&g);
        prop_assert!(cover.is_valid_for(&g));
        prop_assert!(cover.len() >= exhaustive_clique_cover_number(&g));
        prop_assert!(cover.largest() <= max_clique(&g).len());
        prop_assert_eq!(max_clique(&g).len(), exhaustive_clique_number(&g));
        let back = CommGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back, g);
    }
}
