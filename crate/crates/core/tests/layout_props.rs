mod common;

use std::collections::BTreeSet;

use flowtutor::layout::{layered_layout, layers, spring_layout};
use flowtutor::network::FlowNetwork;
use proptest::prelude::*;

use common::{arb_network, random_network};

fn assert_placed(net: &FlowNetwork, l: &flowtutor::layout::LayoutResult, w: f64, h: f64) {
    assert_eq!(l.keys().cloned().collect::<BTreeSet<_>>(), net.nodes);
    let mut seen = BTreeSet::new();
    for p in l.values() {
        assert!(p.x.is_finite() && p.y.is_finite());
        assert!(
            (0.0..=w).contains(&p.x) && (0.0..=h).contains(&p.y),
            "{p:?} outside {w}x{h}"
        );
        assert!(seen.insert((p.x.to_bits(), p.y.to_bits())), "duplicate {p:?}");
    }
}

#[test]
fn large_random_networks() {
    for (n, seed) in [(50, 1), (120, 2), (200, 3)] {
        let net = random_network(n, 10, seed);
        let (w, h) = (1024.0, 768.0);
        let a = spring_layout(&net, w, h, seed).unwrap();
        assert_placed(&net, &a, w, h);
        assert_eq!(a, spring_layout(&net, w, h, seed).unwrap());
        if net.sink_reachable() {
            assert_placed(&net, &layered_layout(&net, w, h).unwrap(), w, h);
        }
    }
}

#[test]
fn tiny_box_still_separates_nodes() {
    let net = random_network(30, 5, 11);
    let l = spring_layout(&net, 1e-3, 1e-3, 0).unwrap();
    assert_placed(&net, &l, 1e-3, 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spring_in_box_unique_deterministic(net in arb_network(12, 5), seed in any::<u64>(), w in 1.0f64..2000.0, h in 1.0f64..2000.0) {
        let l = spring_layout(&net, w, h, seed).unwrap();
        assert_placed(&net, &l, w, h);
        prop_assert_eq!(l, spring_layout(&net, w, h, seed).unwrap());
    }

    #[test]
    fn layered_columns_follow_bfs_depth(net in arb_network(12, 5), w in 1.0f64..2000.0, h in 1.0f64..2000.0) {
        prop_assume!(net.sink_reachable());
        let l = layered_layout(&net, w, h).unwrap();
        assert_placed(&net, &l, w, h);
        let depth = layers(&net).unwrap();
        for e in &net.edges {
            if depth[&e.head] == depth[&e.tail] + 1 {
                prop_assert!(l[&e.tail].x < l[&e.head].x);
            }
        }
        for u in &net.nodes {
            for v in &net.nodes {
                prop_assert_eq!(depth[u] == depth[v], l[u].x == l[v].x);
            }
        }
    }
}
