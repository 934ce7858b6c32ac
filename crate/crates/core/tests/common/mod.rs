//! Shared helpers for the integration suites: the graph corpus and the
//! literal-reversal dependence oracle.
#![allow(dead_code)] // each suite uses its own subset

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use fullorient::graph::{
    complete_graph, complete_multipartite, cycle_graph, cycle_power, SimpleGraph,
};
use fullorient::orientation::{Arc, Orientation};

/// Structured graphs plus seeded random ones; more than fifty in total, all
/// enumerable within the default budget.
pub fn corpus() -> Vec<(String, SimpleGraph)> {
    let mut graphs: Vec<(String, SimpleGraph)> = Vec::new();
    for n in 5..=9 {
        graphs.push((format!("C_{n}^2"), cycle_power(n, 2).unwrap()));
    }
    for n in 7..=9 {
        graphs.push((format!("C_{n}^3"), cycle_power(n, 3).unwrap()));
    }
    for n in 3..=12 {
        graphs.push((format!("C_{n}"), cycle_graph(n).unwrap()));
    }
    for n in 3..=6 {
        graphs.push((format!("K_{n}"), complete_graph(n).unwrap()));
    }
    for (r, n) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4)] {
        graphs.push((
            format!("K_{{{r}({n})}}"),
            complete_multipartite(r, n).unwrap(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x0C1E_57A7);
    for i in 0..25 {
        let n = rng.random_range(4..=8);
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        pairs.shuffle(&mut rng);
        let m = rng.random_range(0..=pairs.len().min(18));
        pairs.truncate(m);
        graphs.push((
            format!("random_{i}(n={n},m={m})"),
            SimpleGraph::new(n, pairs).unwrap(),
        ));
    }
    graphs
}

/// An arc is dependent iff reversing it alone creates a directed cycle.
/// This route never touches the reachability bitsets.
pub fn dependent_by_reversal(o: &Orientation) -> BTreeSet<Arc> {
    o.arcs()
        .filter(|&arc| !o.reverse_arcs(&[arc]).unwrap().is_acyclic())
        .collect()
}
