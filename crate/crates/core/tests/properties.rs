use std::collections::BTreeSet;

use proptest::prelude::*;

use signed_ties::oracle::{enumerate_cycles, DEFAULT_BUDGET};
use signed_ties::{
    decide_tied, enumerate_common_cycles, is_balanced, oracle_tied, verify_certificate, EdgeId, Sign,
    SignedGraph, SwitchSet, VerdictKind,
};

fn signed_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = SignedGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let edge = (0..n, 1..n, any::<bool>()).prop_map(move |(u, d, neg)| {
            let v = (u + d) % n;
            (u, v, if neg { Sign::Negative } else { Sign::Positive })
        });
        prop::collection::vec(edge, 2..=max_m).prop_map(move |edges| SignedGraph::from_edges(n, edges).unwrap())
    })
}

fn with_pair(max_n: usize, max_m: usize) -> impl Strategy<Value = (SignedGraph, EdgeId, EdgeId)> {
    signed_graph(max_n, max_m).prop_flat_map(|g| {
        let m = g.edge_count();
        (Just(g), 0..m, 1..m).prop_map(move |(g, a, d)| (g, EdgeId(a), EdgeId((a + d) % m)))
    })
}

/// Every subset of edges that is a cycle through both edges, by brute force.
fn common_cycles_by_subsets(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> BTreeSet<(BTreeSet<EdgeId>, Sign)> {
    let m = g.edge_count();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << m) {
        if mask >> e1.0 & 1 == 0 || mask >> e2.0 & 1 == 0 {
            continue;
        }
        let edges: Vec<EdgeId> = (0..m).filter(|&i| mask >> i & 1 == 1).map(EdgeId).collect();
        if let Ok(c) = signed_ties::Cycle::from_edge_set(g, &edges) {
            out.insert((c.edge_set(), c.sign(g)));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decide_matches_oracle_and_verifies((g, e1, e2) in with_pair(7, 13)) {
        let ours = decide_tied(&g, e1, e2).unwrap();
        prop_assert_eq!(ours.kind(), oracle_tied(&g, e1, e2).unwrap().kind());
        prop_assert_eq!(verify_certificate(&g, e1, e2, &ours), Ok(()));
    }

    #[test]
    fn oracle_matches_subset_enumeration((g, e1, e2) in with_pair(6, 11)) {
        let report = enumerate_common_cycles(&g, e1, e2, DEFAULT_BUDGET).unwrap();
        prop_assert!(report.complete);
        let found: BTreeSet<_> = report.cycles.iter().map(|c| (c.edge_set(), c.sign(&g))).collect();
        prop_assert_eq!(found.len(), report.cycles.len());
        prop_assert_eq!(found, common_cycles_by_subsets(&g, e1, e2));
    }

    #[test]
    fn switching_keeps_cycle_signs_and_verdicts(
        (g, e1, e2) in with_pair(7, 12),
        picks in prop::collection::vec(any::<bool>(), 7),
    ) {
        let s: SwitchSet = g.vertices().filter(|v| picks[v.0]).collect();
        let h = g.switch(&s).unwrap();
        let (a, _) = enumerate_cycles(&g, DEFAULT_BUDGET);
        let (b, _) = enumerate_cycles(&h, DEFAULT_BUDGET);
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.edges(), y.edges());
            prop_assert_eq!(x.sign(&g), y.sign(&h));
        }
        prop_assert_eq!(decide_tied(&g, e1, e2).unwrap().kind(), decide_tied(&h, e1, e2).unwrap().kind());
    }

    #[test]
    fn balance_answer_is_certified(g in signed_graph(8, 14)) {
        let r = is_balanced(&g);
        let (cycles, complete) = enumerate_cycles(&g, DEFAULT_BUDGET);
        prop_assert!(complete);
        let all_positive = cycles.iter().all(|c| c.sign(&g) == Sign::Positive);
        prop_assert_eq!(r.is_balanced(), all_positive);
        match r {
            signed_ties::BalanceResult::Balanced(theta) => prop_assert!(theta.certifies(&g)),
            signed_ties::BalanceResult::Unbalanced(c) => {
                prop_assert!(c.validate(&g).is_ok());
                prop_assert_eq!(c.sign(&g), Sign::Negative);
            }
        }
    }

    #[test]
    fn untied_minors_lift((g, e1, e2) in with_pair(7, 12), choice in 0usize..64, contract in any::<bool>()) {
        let candidates: Vec<EdgeId> = g
            .edge_ids()
            .filter(|&f| f != e1 && f != e2 && !g.are_parallel(f, e1) && !g.are_parallel(f, e2))
            .collect();
        prop_assume!(!candidates.is_empty());
        let f = candidates[choice % candidates.len()];
        let (h, emap) = if contract {
            let (h, _, emap) = g.contract_edge(f).unwrap();
            (h, emap)
        } else {
            g.delete_edge(f).unwrap()
        };
        let (f1, f2) = (emap[e1.0].unwrap(), emap[e2.0].unwrap());
        if oracle_tied(&h, f1, f2).unwrap().kind() == VerdictKind::Untied {
            prop_assert_eq!(oracle_tied(&g, e1, e2).unwrap().kind(), VerdictKind::Untied);
        }
    }
}
