mod common;

use homext::chrompoly::chromatic_polynomial;
use homext::extremal::{canonical_form, is_isomorphic};
use homext::families::{add_edge, complete, disjoint_union};
use homext::graph::{self, common_neighbors, from_graph6, from_h_format, to_graph6, to_h_format, Graph};
use homext::homcount::count_hom;
use num_bigint::BigInt;
use proptest::prelude::*;

use common::{brute_force_hom, pair_slots};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = pair_slots(n);
        proptest::collection::vec(any::<bool>(), slots.len()).prop_map(move |bits| {
            let edges: Vec<_> = slots.iter().zip(&bits).filter(|(_, &b)| b).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges, false).unwrap()
        })
    })
}

fn target_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), slots.len()).prop_map(move |bits| {
            let edges: Vec<_> = slots.iter().zip(&bits).filter(|(_, &b)| b).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges, true).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn matches_brute_force(g in graph_strategy(6), h in target_strategy(4)) {
        prop_assert_eq!(count_hom(&g, &h).unwrap(), brute_force_hom(&g, &h).into());
    }

    #[test]
    fn multiplicative_over_disjoint_union(a in graph_strategy(4), b in graph_strategy(4), h in target_strategy(3)) {
        let u = disjoint_union(&a, &b).unwrap();
        let lhs = count_hom(&u, &h).unwrap().0;
        let rhs = count_hom(&a, &h).unwrap().0 * count_hom(&b, &h).unwrap().0;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adding_an_edge_never_increases(g in graph_strategy(7), h in target_strategy(4), pick in any::<usize>()) {
        let n = g.vertex_count();
        let missing: Vec<_> = pair_slots(n).into_iter().filter(|&(u, v)| !g.has_edge(u, v)).collect();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick % missing.len()];
        let bigger = add_edge(&g, u, v).unwrap();
        prop_assert!(count_hom(&bigger, &h).unwrap() <= count_hom(&g, &h).unwrap());
    }

    #[test]
    fn degree_sum_is_twice_edges(g in graph_strategy(10)) {
        let sum: usize = graph::degree_profile(&g).degrees.iter().sum();
        prop_assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn canonical_form_is_label_free(g in graph_strategy(9), perm in (1..=9usize).prop_flat_map(permutation)) {
        prop_assume!(perm.len() == g.vertex_count());
        let p = g.permuted(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&p));
        prop_assert!(is_isomorphic(&g, &p));
    }

    #[test]
    fn canonical_form_separates_edge_counts(a in graph_strategy(7), b in graph_strategy(7)) {
        if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
            prop_assert_ne!(canonical_form(&a), canonical_form(&b));
        }
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn h_format_round_trip(h in target_strategy(8)) {
        prop_assert_eq!(from_h_format(&to_h_format(&h)).unwrap(), h);
    }

    #[test]
    fn chromatic_evaluation_counts_colorings(g in graph_strategy(7), q in 1usize..=4) {
        let p = chromatic_polynomial(&g).unwrap();
        let kq = complete(q, false).unwrap().as_target();
        let c = count_hom(&g, &kq).unwrap();
        prop_assert_eq!(p.eval(&BigInt::from(q)), BigInt::from(c.0));
    }

    #[test]
    fn common_neighbors_shrink_with_longer_tuples(h in target_strategy(6), tuple in proptest::collection::vec(0usize..6, 2..5)) {
        let n = h.vertex_count();
        let tuple: Vec<usize> = tuple.into_iter().map(|v| v % n).collect();
        let full = common_neighbors(&h, &tuple).unwrap();
        let prefix = common_neighbors(&h, &tuple[..tuple.len() - 1]).unwrap();
        prop_assert_eq!(full & !prefix, 0);
    }

    #[test]
    fn one_connected_means_connected(g in graph_strategy(8)) {
        // k-connectivity needs more than k vertices, so K_1 is excluded.
        prop_assume!(g.vertex_count() >= 2);
        prop_assert_eq!(graph::is_k_connected(&g, 1), graph::is_connected(&g));
    }
}

#[test]
fn brute_force_oracle_sanity() {
    // Two colorings of an edge by K_2: both orientations.
    let k2 = complete(2, false).unwrap();
    assert_eq!(brute_force_hom(&k2, &k2.as_target()), 2);
    let k3 = complete(3, false).unwrap();
    assert_eq!(brute_force_hom(&k3, &k3.as_target()), 6);
}
