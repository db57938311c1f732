mod common;

use common::*;
use proptest::prelude::*;
use uppertail::families::{complete, cycle_pendant, edge, snail, triangle};
use uppertail::graph::{automorphism_count, automorphism_count_exhaustive, count_copies, graph_from_edge_list};
use uppertail::{Error, Graph, VertexSet};

#[test]
fn edge_list_examples() {
    let tri = graph_from_edge_list("1 2\n2 3\n3 1").unwrap();
    assert_eq!((tri.order(), tri.edge_count()), (3, 3));
    let one = graph_from_edge_list("1 2\n1 2").unwrap();
    assert_eq!((one.order(), one.edge_count()), (2, 1));
    let s = graph_from_edge_list("1 2\n2 3\n1 3\n1 4\n4 5\n4 6\n2 7\n").unwrap();
    assert_eq!(s, snail());
    assert_eq!((s.order(), s.edge_count()), (7, 7));
}

#[test]
fn edge_list_is_order_independent_and_ignores_comments() {
    let a = graph_from_edge_list("# snail\n2 7\n\n4 6   # leaf\n4 5\n1 4\n1 3\n2 3\n1 2\n").unwrap();
    assert_eq!(a, snail());
}

#[test]
fn edge_list_errors_carry_line_numbers() {
    for (text, line) in [("1 2\n3 3\n", 2), ("1 2\n2 33\n", 2), ("1 x\n", 1), ("1 2 3\n", 1), ("0 1\n", 1)] {
        match graph_from_edge_list(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?} gave {other:?}"),
        }
    }
}

#[test]
fn order_cap() {
    assert!(Graph::empty(32).is_ok());
    assert!(matches!(Graph::empty(33), Err(Error::TooManyVertices(33))));
}

#[test]
fn induced_subgraph_examples() {
    let s = snail();
    assert_eq!(s.induced_subgraph(set("123")).unwrap(), triangle());
    let g4 = s.induced_subgraph(set("1234")).unwrap();
    assert_eq!(g4, graph(4, &[(1, 2), (2, 3), (1, 3), (1, 4)]));
    assert_eq!(s.induced_subgraph(s.vertex_set()).unwrap(), s);
    assert!(s.induced_subgraph(VertexSet::EMPTY).is_err());
}

#[test]
fn connectivity_examples() {
    assert!(triangle().is_connected());
    assert!(!graph(4, &[(1, 2), (3, 4)]).is_connected());
    assert!(snail().is_connected());
    assert!(Graph::empty(1).unwrap().is_connected());
}

#[test]
fn automorphism_examples() {
    assert_eq!(automorphism_count(&triangle()), 6);
    assert_eq!(automorphism_count(&graph(3, &[(1, 2), (2, 3)])), 2);
    let c32 = cycle_pendant(3, 2).unwrap();
    assert_eq!(automorphism_count(&c32), 4);
    assert_eq!(aut(&c32), 4);
    assert_eq!(automorphism_count(&petersen()), 120);
}

#[test]
fn copy_count_examples() {
    assert_eq!(count_copies(&complete(4).unwrap(), &triangle()), 4);
    // independent oracle: injections into K5 divided by |Aut|
    let c32 = cycle_pendant(3, 2).unwrap();
    let k5 = complete(5).unwrap();
    let oracle = injections(&c32, &k5) / aut(&c32);
    assert_eq!(injections(&c32, &k5) % aut(&c32), 0);
    assert_eq!(oracle, 30);
    assert_eq!(count_copies(&k5, &c32), oracle);
    for l in 3..=5 {
        for z in 1..=5 {
            let host = cycle_pendant(l, z).unwrap();
            for r in 1..=z {
                let expect = (0..r).fold(1u64, |a, i| a * (z - i) as u64 / (i + 1) as u64);
                assert_eq!(count_copies(&host, &cycle_pendant(l, r).unwrap()), expect, "l={l} z={z} r={r}");
            }
        }
    }
    assert_eq!(count_copies(&triangle(), &k5), 0);
}

#[test]
fn injection_cross_check_on_small_graphs() {
    let mut small: Vec<Graph> = (2..=4).flat_map(all_connected).collect();
    small.push(cycle_pendant(3, 2).unwrap());
    let hosts: Vec<Graph> = all_connected(5).into_iter().step_by(37).collect();
    for pattern in &small {
        let a = automorphism_count(pattern);
        assert_eq!(a as u64, aut(pattern));
        for host in &hosts {
            assert_eq!(count_copies(host, pattern) * a as u64, injections(pattern, host));
        }
    }
}

#[test]
fn pruned_and_exhaustive_automorphisms_agree() {
    for g in all_connected(5).iter().chain(&[snail(), petersen(), cycle_pendant(3, 4).unwrap()]) {
        assert_eq!(automorphism_count(g), automorphism_count_exhaustive(g).unwrap());
    }
}

fn arb_graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut e = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        e.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &e).unwrap()
        })
    })
}

fn arb_graph_and_perm(max_order: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_order).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_count_matches_adjacency(g in arb_graph(12)) {
        let degree_sum: usize = (0..g.order()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        for u in 0..g.order() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..g.order() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn edges_are_single_edge_copies(g in arb_graph(12)) {
        prop_assert_eq!(count_copies(&g, &edge()) as usize, g.edge_count());
    }

    #[test]
    fn automorphisms_divide_factorial(g in arb_graph(9)) {
        let fact: u128 = (1..=g.order() as u128).product();
        prop_assert_eq!(fact % automorphism_count(&g), 0);
    }

    #[test]
    fn induced_subgraph_filters_edges(g in arb_graph(10), mask in any::<u32>()) {
        let s = VertexSet::from_mask(mask & ((1u64 << g.order()) - 1) as u32);
        prop_assume!(!s.is_empty());
        let sub = g.induced_subgraph(s).unwrap();
        let expected = g.edges().into_iter().filter(|&(u, v)| s.contains(u) && s.contains(v)).count();
        prop_assert_eq!(sub.order(), s.len());
        prop_assert_eq!(sub.edge_count(), expected);
    }

    #[test]
    fn copies_are_isomorphism_invariant((host, hp) in arb_graph_and_perm(8), (pattern, pp) in arb_graph_and_perm(4)) {
        let base = count_copies(&host, &pattern);
        prop_assert_eq!(count_copies(&host.relabel(&hp).unwrap(), &pattern), base);
        prop_assert_eq!(count_copies(&host, &pattern.relabel(&pp).unwrap()), base);
        prop_assert_eq!(automorphism_count(&pattern.relabel(&pp).unwrap()), automorphism_count(&pattern));
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph(12)) {
        prop_assume!(g.edge_count() > 0);
        let back = graph_from_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }
}
