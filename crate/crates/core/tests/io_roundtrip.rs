//! Serialization round-trips as properties: identity on valid hypergraphs,
//! duplicate hyperedges and list order included.

use berge_core::hypergraph::Hypergraph;
use berge_core::io;
use proptest::prelude::*;

fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (1usize..10).prop_flat_map(|n| {
        let hyperedge = proptest::collection::btree_set(0..n, 1..=n.min(5))
            .prop_map(|s| s.into_iter().collect::<Vec<_>>());
        proptest::collection::vec(hyperedge, 0..8)
            .prop_map(move |hs| Hypergraph::new(n, hs))
    })
}

proptest! {
    #[test]
    fn text_round_trip_is_identity(h in arb_hypergraph()) {
        prop_assert!(h.validate().is_empty());
        let text = io::write_hypergraph_text(&h);
        let back = io::read_hypergraph_text(&text).unwrap();
        prop_assert_eq!(back.hypergraph, h);
    }

    #[test]
    fn json_round_trip_is_identity(h in arb_hypergraph()) {
        let json = io::write_hypergraph_json(&h);
        let back = io::read_hypergraph_json(&json).unwrap();
        prop_assert_eq!(back.hypergraph, h);
    }

    #[test]
    fn degree_sum_identity(h in arb_hypergraph()) {
        // count_report computes the sum both ways and asserts the identity
        let report = berge_core::hypergraph::count_report(&h).unwrap();
        let by_hyperedge: usize = h.hyperedges().iter().map(|e| e.len()).sum();
        prop_assert_eq!(report.degree_sum, by_hyperedge);
        prop_assert_eq!(
            report.deficiency_sum,
            by_hyperedge as i64 - 3 * h.len() as i64
        );
    }
}

#[test]
fn duplicates_and_order_survive_both_formats() {
    let h = Hypergraph::new(
        6,
        vec![vec![3, 4, 5], vec![0, 1], vec![0, 1], vec![2, 3, 4, 5]],
    );
    assert_eq!(
        io::read_hypergraph_text(&io::write_hypergraph_text(&h)).unwrap().hypergraph,
        h
    );
    assert_eq!(
        io::read_hypergraph_json(&io::write_hypergraph_json(&h)).unwrap().hypergraph,
        h
    );
}
