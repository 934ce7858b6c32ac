//! Randomized invariants over graphs and orientations.

mod common;

use proptest::prelude::*;

use fullorient::graph::{enumerate_triangles, graph_power, SimpleGraph};
use fullorient::orientation::{Arc, Orientation};
use fullorient::spectrum::{
    d_max_closed_form, dependency_spectrum, min_triangle_edge_deletion, StrategyChoice,
    DEFAULT_BUDGET,
};

/// Arbitrary simple graph: up to 9 vertices, any subset of the possible
/// edges in a shuffled insertion order.
fn small_graph() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=9)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let max = pairs.len();
            (Just(n), prop::sample::subsequence(pairs, 0..=max))
        })
        .prop_map(|(n, edges)| SimpleGraph::new(n, edges).unwrap())
}

/// A graph guaranteed connected: a random tree plus extra edges.
fn connected_graph() -> impl Strategy<Value = (SimpleGraph, usize)> {
    (2usize..=8)
        .prop_flat_map(|n| {
            let attach = prop::collection::vec(0usize..n, n - 1);
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let max = pairs.len();
            (
                Just(n),
                attach,
                prop::sample::subsequence(pairs, 0..=max),
                1usize..=3,
            )
        })
        .prop_map(|(n, attach, extra, m)| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (attach[v - 1] % v, v)).collect();
            for e in extra {
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
            (SimpleGraph::new(n, edges).unwrap(), m)
        })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn text_format_round_trips(g in small_graph()) {
        let text = g.to_text();
        let parsed = SimpleGraph::from_text(&text).unwrap();
        prop_assert_eq!(parsed, g);
    }

    #[test]
    fn graph_powers_are_monotone((g, m) in connected_graph()) {
        let lo = graph_power(&g, m).unwrap();
        let hi = graph_power(&g, m + 1).unwrap();
        let hi_edges: std::collections::BTreeSet<_> = hi.edges().iter().copied().collect();
        for e in lo.edges() {
            prop_assert!(hi_edges.contains(e));
        }
    }

    #[test]
    fn order_induced_orientations_are_acyclic_and_bounded(
        (g, order) in small_graph().prop_flat_map(|g| {
            let n = g.n_vertices();
            (Just(g), permutation(n))
        })
    ) {
        let shared = g.shared();
        let o = Orientation::from_linear_order(&shared, &order).unwrap();
        prop_assert!(o.is_acyclic());
        let d = o.dependent_arcs().unwrap().d;
        prop_assert!(d <= d_max_closed_form(&shared));
    }

    #[test]
    fn dependence_equals_literal_reversal(
        (g, order) in small_graph().prop_flat_map(|g| {
            let n = g.n_vertices();
            (Just(g), permutation(n))
        })
    ) {
        let shared = g.shared();
        let o = Orientation::from_linear_order(&shared, &order).unwrap();
        let report = o.dependent_arcs().unwrap();
        prop_assert_eq!(&report.dependent, &common::dependent_by_reversal(&o));
        prop_assert_eq!(report.d + report.covers.len(), shared.n_edges());
    }

    #[test]
    fn relabeling_preserves_dependence_count(
        (g, order, relabel) in small_graph().prop_flat_map(|g| {
            let n = g.n_vertices();
            (Just(g), permutation(n), permutation(n))
        })
    ) {
        let shared = g.shared();
        let o = Orientation::from_linear_order(&shared, &order).unwrap();
        let d = o.dependent_arcs().unwrap().d;

        let mapped_edges: Vec<(usize, usize)> = shared
            .edges()
            .iter()
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        let image_graph = SimpleGraph::new(shared.n_vertices(), mapped_edges).unwrap().shared();
        let mapped_arcs: Vec<Arc> = o
            .arcs()
            .map(|a| Arc::new(relabel[a.tail], relabel[a.head]))
            .collect();
        let image = Orientation::from_arcs(&image_graph, &mapped_arcs).unwrap();
        prop_assert_eq!(image.dependent_arcs().unwrap().d, d);
    }

    #[test]
    fn topological_order_reconstructs_the_orientation(
        (g, order) in small_graph().prop_flat_map(|g| {
            let n = g.n_vertices();
            (Just(g), permutation(n))
        })
    ) {
        let shared = g.shared();
        let o = Orientation::from_linear_order(&shared, &order).unwrap();
        let topo = o.topological_order().unwrap();
        let rebuilt = Orientation::from_linear_order(&shared, &topo).unwrap();
        prop_assert_eq!(rebuilt, o);
    }
}

/// Smallest k such that some k edges meet every triangle, by scanning all
/// edge subsets in increasing size.
fn pi_t_by_subset_scan(g: &SimpleGraph) -> usize {
    let m = g.n_edges();
    let triangles = enumerate_triangles(g);
    for size in 0..=m {
        let mut indices: Vec<usize> = (0..size).collect();
        loop {
            if triangles
                .iter()
                .all(|t| t.edges.iter().any(|e| indices.contains(e)))
            {
                return size;
            }
            // next combination of `size` edge indices
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if indices[i] != i + m - size {
                    indices[i] += 1;
                    for j in i + 1..size {
                        indices[j] = indices[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    unreachable!("deleting every edge is always enough")
}

proptest! {
    // enumeration-heavy, so fewer cases
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn triangle_cover_search_is_exact(
        g in (4usize..=7).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let max = pairs.len().min(14);
            (Just(n), prop::sample::subsequence(pairs, 0..=max))
        }).prop_map(|(n, edges)| SimpleGraph::new(n, edges).unwrap())
    ) {
        let cover = min_triangle_edge_deletion(&g).unwrap();
        prop_assert_eq!(cover.pi_t, pi_t_by_subset_scan(&g));
        // the returned set itself must hit every triangle
        let kept: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|e| !cover.deletion_set.contains(e))
            .collect();
        let stripped = SimpleGraph::new(g.n_vertices(), kept).unwrap();
        prop_assert!(enumerate_triangles(&stripped).is_empty());
    }

    #[test]
    fn strategies_agree_on_random_graphs(
        g in (1usize..=6).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let max = pairs.len();
            (Just(n), prop::sample::subsequence(pairs, 0..=max))
        }).prop_map(|(n, edges)| SimpleGraph::new(n, edges).unwrap())
    ) {
        let a = dependency_spectrum(&g, StrategyChoice::EdgeSubsets, DEFAULT_BUDGET).unwrap();
        let b = dependency_spectrum(&g, StrategyChoice::LinearOrders, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(a.achievable, b.achievable);
        prop_assert_eq!(a.counts, b.counts);
    }
}
