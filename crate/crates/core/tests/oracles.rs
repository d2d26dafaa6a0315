//! Solver, path strategies and cut analysis checked against exhaustive
//! enumeration on small random networks.

mod common;

use std::collections::BTreeSet;

use flowtutor::cut::{cut_capacity, find_min_cut, validate_cut, CutInterpretation};
use flowtutor::fixtures::{bipartite, diamond, zigzag};
use flowtutor::flow::{bottleneck, residual_graph, Flow};
use flowtutor::network::{node, NodeId};
use flowtutor::strategy::{find_random_path, find_shortest_path, find_widest_path, solve, Strategy};
use proptest::prelude::*;

use common::{all_augmenting_paths, all_cuts, arb_network, min_cut_family, proper_subsets};

#[test]
fn enumerated_min_cuts_of_fixtures() {
    let d = diamond();
    let (best, family) = min_cut_family(&d);
    assert_eq!(best, 5);
    let set = |ids: &[&str]| ids.iter().map(|s| node(s)).collect::<BTreeSet<NodeId>>();
    assert_eq!(family, vec![set(&["s"]), set(&["s", "a"]), set(&["s", "a", "b"])]);
    assert_eq!(all_cuts(&d).len(), 4);
    assert_eq!(min_cut_family(&bipartite()).0, 4);
    assert_eq!(min_cut_family(&zigzag()).0, 2000);
}

#[test]
fn enumerated_paths_of_fixtures() {
    let z = zigzag();
    let r = residual_graph(&z, &Flow::zero(&z)).unwrap();
    let mut paths = all_augmenting_paths(&r);
    paths.sort();
    let widths: Vec<i64> = paths.iter().map(|(_, w)| *w).collect();
    assert_eq!(paths.len(), 3);
    assert_eq!(widths.iter().max(), Some(&1000));
    assert_eq!(paths.iter().map(|(p, _)| p.len() - 1).min(), Some(2));

    let d = diamond();
    let r = residual_graph(&d, &Flow::zero(&d)).unwrap();
    let paths = all_augmenting_paths(&r);
    assert_eq!(paths.len(), 3);
    assert_eq!(paths.iter().map(|(_, w)| *w).max(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn max_flow_equals_min_cut(net in arb_network(8, 10), seed in any::<u64>()) {
        let (best, family) = min_cut_family(&net);
        let mut values = Vec::new();
        for strategy in [Strategy::Shortest, Strategy::Widest, Strategy::Random { seed }] {
            let res = solve(&net, strategy).unwrap();
            prop_assert!(res.iterations as i64 <= res.value.max(0));
            values.push(res.value);
        }
        prop_assert!(values.iter().all(|&v| v == best), "{values:?} vs {best}");

        let smallest = find_min_cut(&net).unwrap();
        prop_assert_eq!(smallest.capacity, best);
        prop_assert_eq!(cut_capacity(&net, &smallest.s_side).unwrap(), best);
        for s_side in &family {
            prop_assert!(smallest.s_side.is_subset(s_side));
            for other in &family {
                let meet: BTreeSet<_> = s_side.intersection(other).cloned().collect();
                let join: BTreeSet<_> = s_side.union(other).cloned().collect();
                prop_assert!(family.contains(&meet));
                prop_assert!(family.contains(&join));
            }
        }
    }

    #[test]
    fn path_finders_match_enumeration(net in arb_network(7, 10), seed in any::<u64>(), steps in 0usize..4) {
        // Move to some intermediate flow first so backward arcs appear.
        let mut flow = Flow::zero(&net);
        for k in 0..steps {
            let r = residual_graph(&net, &flow).unwrap();
            let Some(p) = find_random_path(&r, seed.wrapping_add(k as u64)) else { break };
            flow = flowtutor::flow::augment(&net, &flow, &p, 1).unwrap();
        }
        let r = residual_graph(&net, &flow).unwrap();
        let paths = all_augmenting_paths(&r);
        match (find_shortest_path(&r), find_widest_path(&r)) {
            (None, None) => prop_assert!(paths.is_empty()),
            (Some(short), Some(wide)) => {
                let min_len = paths.iter().map(|(p, _)| p.len() - 1).min().unwrap();
                let max_width = paths.iter().map(|(_, w)| *w).max().unwrap();
                prop_assert_eq!(short.len(), min_len);
                prop_assert_eq!(bottleneck(&wide).unwrap().value, max_width);
                let fewest_wide = paths.iter().filter(|(_, w)| *w == max_width).map(|(p, _)| p.len() - 1).min().unwrap();
                prop_assert_eq!(wide.len(), fewest_wide);
                short.check_shape(&r.source, &r.sink).unwrap();
                wide.check_shape(&r.source, &r.sink).unwrap();
                let random = find_random_path(&r, seed).unwrap();
                prop_assert!(paths.iter().any(|(p, _)| *p == random.nodes()));
            }
            other => prop_assert!(false, "finders disagree on existence: {other:?}"),
        }
    }

    #[test]
    fn shortest_iterations_within_edmonds_karp_bound(net in arb_network(8, 10)) {
        let res = solve(&net, Strategy::Shortest).unwrap();
        prop_assert!(res.iterations <= net.nodes.len() * net.edges.len().max(1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validate_cut_accepts_exactly_the_min_cut_family(net in arb_network(6, 6)) {
        let (_, family) = min_cut_family(&net);
        let s = net.source.clone().unwrap();
        let t = net.sink.clone().unwrap();
        for selected in proper_subsets(&net) {
            let verdict = validate_cut(&net, &selected).unwrap();
            let expected = if selected.contains(&s) && !selected.contains(&t) {
                family.contains(&selected)
            } else if selected.contains(&t) && !selected.contains(&s) {
                let s_side: BTreeSet<_> = net.nodes.difference(&selected).cloned().collect();
                family.contains(&s_side)
            } else {
                prop_assert_eq!(verdict.interpretation, CutInterpretation::Uninterpretable);
                false
            };
            prop_assert_eq!(verdict.valid, expected, "{:?}", selected);
            prop_assert_eq!(verdict.valid, verdict.diagnostics.is_empty());
        }
    }
}
