#![allow(dead_code)]

use proptest::prelude::*;

use nullcert::graph::Graph;

/// Random simple graph on `1..=max_n` vertices.
pub fn arb_graph(min_n: u32, max_n: u32) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = (n * n.saturating_sub(1) / 2) as usize;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let all = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
            Graph::new(n, all.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Random forest: every vertex after the first optionally hangs off an earlier one.
pub fn arb_forest(max_n: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((any::<bool>(), any::<u32>()), n as usize).prop_map(move |picks| {
            let edges = (2..=n).filter_map(|v| {
                let (keep, r) = picks[v as usize - 1];
                keep.then(|| (r % (v - 1) + 1, v))
            });
            Graph::new(n, edges).unwrap()
        })
    })
}

pub fn sample_tree() -> Graph {
    Graph::new(
        10,
        [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (3, 8), (4, 9), (4, 10)],
    )
    .unwrap()
}
