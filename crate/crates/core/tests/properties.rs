//! Randomized structural properties, driven by proptest.

use proptest::prelude::*;

use metricdim::graph::{edge_vertex_distance, Graph};
use metricdim::resolver::{
    exact_dimension, greedy_generator, is_generator, Kind, LandmarkSet, SolveOptions,
};
use metricdim::subdivision::subdivide;

/// Arbitrary graph on 1..=10 vertices from an edge bitmask.
fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=10).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::bits::u64::between(0, pairs.max(1)))
    })
    .prop_map(|(n, mask)| {
        let edges: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        Graph::from_edges(n, edges).unwrap()
    })
}

fn arb_connected_graph() -> impl Strategy<Value = Graph> {
    arb_graph().prop_filter("connected", |g| g.is_connected())
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let text = g.to_edge_list();
        let back = Graph::parse_edge_list(&text).unwrap();
        prop_assert_eq!(g, back);
    }

    #[test]
    fn edge_distance_is_closer_endpoint(g in arb_connected_graph()) {
        let d = g.distances();
        for e in 0..g.m() as u32 {
            let (u, v) = g.endpoints(metricdim::graph::EdgeRef(e));
            for w in 0..g.n() as u32 {
                let de = edge_vertex_distance(&g, &d, metricdim::graph::EdgeRef(e), w);
                prop_assert_eq!(de, d.dist(u, w).min(d.dist(v, w)));
                prop_assert!(d.dist(u, w).abs_diff(d.dist(v, w)) <= 1);
            }
        }
    }

    #[test]
    fn subdivision_doubles_distances(g in arb_connected_graph()) {
        let (sg, _) = subdivide(&g);
        let bd = g.distances();
        let sd = sg.distances();
        for u in 0..g.n() as u32 {
            for v in 0..g.n() as u32 {
                prop_assert_eq!(sd.dist(u, v), 2 * bd.dist(u, v));
            }
        }
    }

    #[test]
    fn generators_are_monotone(g in arb_connected_graph(), extra in 0u32..10) {
        let d = g.distances();
        for kind in [Kind::VertexMetric, Kind::EdgeMetric] {
            let s = greedy_generator(&g, kind).unwrap();
            prop_assert!(is_generator(&g, &d, &s, kind));
            let bigger = s.with(extra % g.n() as u32);
            prop_assert!(is_generator(&g, &d, &bigger, kind));
        }
    }

    #[test]
    fn minimum_witnesses_are_critical(g in arb_connected_graph()) {
        let opts = SolveOptions::default();
        let d = g.distances();
        for kind in [Kind::VertexMetric, Kind::EdgeMetric] {
            let result = exact_dimension(&g, kind, &opts).unwrap();
            prop_assert!(is_generator(&g, &d, &result.witness, kind));
            // Dropping any landmark from a minimum generator breaks it.
            for &v in result.witness.ids() {
                let smaller = result.witness.without(v);
                prop_assert!(!is_generator(&g, &d, &smaller, kind));
            }
        }
    }

    #[test]
    fn landmark_set_display_parses_back(ids in proptest::collection::vec(0u32..100, 0..8)) {
        let s = LandmarkSet::new(ids);
        let text = s.to_string();
        let body = text.trim_start_matches('{').trim_end_matches('}');
        let back: Vec<u32> = body
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse().unwrap())
            .collect();
        prop_assert_eq!(back, s.ids().to_vec());
    }
}
