//! Exhaustive dependency spectra: enumerate every acyclic orientation of a
//! graph, tally the dependent-arc counts, and decide full orientability.
//!
//! Two enumeration strategies exist and must agree: walking all `2^|E|`
//! direction words (`EdgeSubsets`) and walking all `|V|!` vertex orders with
//! canonical dedup (`LinearOrders`). Both refuse to start when their work
//! estimate exceeds the caller's budget.
//!
//! Enumeration splits into deterministic contiguous chunks that may run in
//! parallel; partial tallies merge by pointwise addition (or set union for
//! the dedup path), so the result is independent of the chunk count.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    component_count, enumerate_triangles, next_permutation, SharedGraph, SimpleGraph,
};
use crate::orientation::{DagAnalyzer, Orientation};

/// Default ceiling on elementary orientation checks (`2^26`).
pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// Default ceiling on branch-and-bound nodes for the triangle-cover search.
pub const DEFAULT_PI_T_NODE_BUDGET: u64 = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("enumeration over budget: 2^|E| = {subsets_work} subsets, |V|! = {orders_work} orders, budget {budget}")]
    BudgetExceeded {
        subsets_work: u128,
        orders_work: u128,
        budget: u64,
    },
    #[error("triangle cover search over budget: {explored} nodes explored, budget {budget}")]
    TriangleSearchBudget { explored: u64, budget: u64 },
}

/// How to walk the orientation space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    EdgeSubsets,
    LinearOrders,
}

/// Caller-facing strategy knob; `Auto` picks whichever estimate is smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyChoice {
    Auto,
    EdgeSubsets,
    LinearOrders,
}

fn subsets_work(m: usize) -> u128 {
    if m >= 128 {
        u128::MAX
    } else {
        1u128 << m
    }
}

fn orders_work(n: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 2..=n as u128 {
        acc = acc.saturating_mul(i);
    }
    acc
}

fn budget_error(g: &SimpleGraph, budget: u64) -> SpectrumError {
    SpectrumError::BudgetExceeded {
        subsets_work: subsets_work(g.n_edges()),
        orders_work: orders_work(g.n_vertices()),
        budget,
    }
}

/// Resolves `Auto` and enforces the budget for the chosen strategy.
pub fn resolve_strategy(
    g: &SimpleGraph,
    choice: StrategyChoice,
    budget: u64,
) -> Result<Strategy, SpectrumError> {
    let subsets = subsets_work(g.n_edges());
    let orders = orders_work(g.n_vertices());
    let strategy = match choice {
        StrategyChoice::EdgeSubsets => Strategy::EdgeSubsets,
        StrategyChoice::LinearOrders => Strategy::LinearOrders,
        StrategyChoice::Auto => {
            if subsets <= orders {
                Strategy::EdgeSubsets
            } else {
                Strategy::LinearOrders
            }
        }
    };
    let work = match strategy {
        Strategy::EdgeSubsets => subsets,
        Strategy::LinearOrders => orders,
    };
    if work > budget as u128 {
        return Err(budget_error(g, budget));
    }
    Ok(strategy)
}

/// The achievable dependent-arc counts of a graph, with one tally per
/// distinct acyclic orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumResult {
    pub achievable: Vec<usize>,
    pub counts: BTreeMap<usize, u64>,
    pub d_min: usize,
    pub d_max: usize,
    pub fully_orientable: bool,
    pub gaps: Vec<usize>,
    pub strategy: Strategy,
    pub enumerated: u64,
}

impl SpectrumResult {
    fn from_counts(g: &SimpleGraph, strategy: Strategy, counts: BTreeMap<usize, u64>) -> Self {
        assert!(!counts.is_empty(), "every graph has an acyclic orientation");
        let achievable: Vec<usize> = counts.keys().copied().collect();
        let d_min = achievable[0];
        let d_max = *achievable.last().unwrap();
        // maximum of the spectrum always equals the closed form
        assert_eq!(
            d_max,
            d_max_closed_form(g),
            "enumerated maximum disagrees with |E| - |V| + c"
        );
        let gaps: Vec<usize> = (d_min..=d_max)
            .filter(|d| !counts.contains_key(d))
            .collect();
        let enumerated = counts.values().sum();
        SpectrumResult {
            fully_orientable: gaps.is_empty(),
            achievable,
            counts,
            d_min,
            d_max,
            gaps,
            strategy,
            enumerated,
        }
    }
}

/// `d_max(G) = |E| - |V| + c` for a graph with `c` components.
pub fn d_max_closed_form(g: &SimpleGraph) -> usize {
    g.n_edges() + component_count(g) - g.n_vertices()
}

/// Lexicographic permutation unranking over `0..n`.
fn permutation_at_rank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut factorial = vec![1u64; n.max(1)];
    for i in 1..n {
        factorial[i] = factorial[i - 1] * i as u64;
    }
    let mut available: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial[i];
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(available.remove(idx));
    }
    out
}

fn direction_key(g: &SimpleGraph, pos: &[u32]) -> Box<[u64]> {
    let m = g.n_edges();
    let mut key = vec![0u64; m.div_ceil(64).max(1)];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if pos[u] > pos[v] {
            key[e / 64] |= 1 << (e % 64);
        }
    }
    key.into_boxed_slice()
}

enum Partial {
    Counts(BTreeMap<usize, u64>),
    Seen(HashMap<Box<[u64]>, u32>),
}

fn subsets_chunk(g: &SimpleGraph, range: std::ops::Range<u64>) -> Partial {
    let mut analyzer = DagAnalyzer::new(g);
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for code in range {
        if let Some(d) = analyzer.analyze(|e| code >> e & 1 == 1) {
            *counts.entry(d).or_insert(0) += 1;
        }
    }
    Partial::Counts(counts)
}

fn orders_chunk(g: &SimpleGraph, range: std::ops::Range<u64>) -> Partial {
    let n = g.n_vertices();
    let mut analyzer = DagAnalyzer::new(g);
    let mut seen: HashMap<Box<[u64]>, u32> = HashMap::new();
    let mut perm = permutation_at_rank(n, range.start);
    let mut pos = vec![0u32; n];
    let mut order = vec![0u32; n];
    for _ in range {
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i as u32;
            order[i] = v as u32;
        }
        let key = direction_key(g, &pos);
        seen.entry(key).or_insert_with(|| {
            analyzer.analyze_ordered(
                |e| {
                    let (u, v) = g.edge(e);
                    pos[u] > pos[v]
                },
                &order,
            ) as u32
        });
        next_permutation(&mut perm);
    }
    Partial::Seen(seen)
}

/// Chunked enumeration; exposed with an explicit chunk count so tests can
/// confirm the merge is chunk-count independent.
pub(crate) fn dependency_spectrum_chunked(
    g: &SimpleGraph,
    choice: StrategyChoice,
    budget: u64,
    chunk_count: u64,
) -> Result<SpectrumResult, SpectrumError> {
    let strategy = resolve_strategy(g, choice, budget)?;
    let total: u64 = match strategy {
        Strategy::EdgeSubsets => 1u64 << g.n_edges(),
        Strategy::LinearOrders => orders_work(g.n_vertices()) as u64,
    };
    let chunks = chunk_count.clamp(1, total.max(1));
    let per = total / chunks;
    let extra = total % chunks;
    // contiguous ranges: the first `extra` chunks take one extra item
    let ranges: Vec<std::ops::Range<u64>> = (0..chunks)
        .scan(0u64, |start, i| {
            let len = per + u64::from(i < extra);
            let r = *start..*start + len;
            *start += len;
            Some(r)
        })
        .filter(|r| !r.is_empty())
        .collect();

    let partials: Vec<Partial> = ranges
        .into_par_iter()
        .map(|range| match strategy {
            Strategy::EdgeSubsets => subsets_chunk(g, range),
            Strategy::LinearOrders => orders_chunk(g, range),
        })
        .collect();

    let counts = match strategy {
        Strategy::EdgeSubsets => {
            let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
            for partial in partials {
                let Partial::Counts(counts) = partial else {
                    unreachable!()
                };
                for (d, c) in counts {
                    *merged.entry(d).or_insert(0) += c;
                }
            }
            merged
        }
        Strategy::LinearOrders => {
            let mut merged: HashMap<Box<[u64]>, u32> = HashMap::new();
            for partial in partials {
                let Partial::Seen(seen) = partial else {
                    unreachable!()
                };
                merged.extend(seen);
            }
            let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
            for &d in merged.values() {
                *counts.entry(d as usize).or_insert(0) += 1;
            }
            counts
        }
    };
    Ok(SpectrumResult::from_counts(g, strategy, counts))
}

fn default_chunks(total: u128) -> u64 {
    // enough chunks to keep the pool busy, bounded so tiny jobs stay serial
    let threads = rayon::current_num_threads() as u128;
    (total / 4096).clamp(1, threads * 8).min(u64::MAX as u128) as u64
}

/// Aggregates `dependent_arcs` over every acyclic orientation of `g`.
pub fn dependency_spectrum(
    g: &SimpleGraph,
    choice: StrategyChoice,
    budget: u64,
) -> Result<SpectrumResult, SpectrumError> {
    let strategy = resolve_strategy(g, choice, budget)?;
    let work = match strategy {
        Strategy::EdgeSubsets => subsets_work(g.n_edges()),
        Strategy::LinearOrders => orders_work(g.n_vertices()),
    };
    dependency_spectrum_chunked(g, choice, budget, default_chunks(work))
}

/// Full-orientability verdict together with the spectrum that decided it.
pub fn full_orientability(
    g: &SimpleGraph,
    budget: u64,
) -> Result<(bool, SpectrumResult), SpectrumError> {
    let spectrum = dependency_spectrum(g, StrategyChoice::Auto, budget)?;
    Ok((spectrum.fully_orientable, spectrum))
}

/// Streaming enumeration of the distinct acyclic orientations of a graph,
/// each yielded exactly once in a deterministic per-strategy order.
pub fn enumerate_acyclic_orientations(
    g: &SharedGraph,
    choice: StrategyChoice,
    budget: u64,
) -> Result<AcyclicOrientationIter, SpectrumError> {
    let strategy = resolve_strategy(g, choice, budget)?;
    let n = g.n_vertices();
    Ok(AcyclicOrientationIter {
        analyzer: DagAnalyzer::new(g),
        state: match strategy {
            Strategy::EdgeSubsets => IterState::Subsets {
                next: 0,
                total: 1u64 << g.n_edges(),
            },
            Strategy::LinearOrders => IterState::Orders {
                perm: (0..n).collect(),
                remaining: orders_work(n) as u64,
                pos: vec![0u32; n],
                seen: HashSet::new(),
            },
        },
        graph: g.clone(),
        strategy,
    })
}

enum IterState {
    Subsets {
        next: u64,
        total: u64,
    },
    Orders {
        perm: Vec<usize>,
        remaining: u64,
        pos: Vec<u32>,
        seen: HashSet<Box<[u64]>>,
    },
}

pub struct AcyclicOrientationIter {
    graph: SharedGraph,
    strategy: Strategy,
    analyzer: DagAnalyzer,
    state: IterState,
}

impl AcyclicOrientationIter {
    pub fn strategy(&self) -> Strategy {
        self.strategy
    }
}

impl Iterator for AcyclicOrientationIter {
    type Item = Orientation;

    fn next(&mut self) -> Option<Orientation> {
        match &mut self.state {
            IterState::Subsets { next, total } => {
                while next < total {
                    let code = *next;
                    *next += 1;
                    if self.analyzer.kahn(|e| code >> e & 1 == 1).is_some() {
                        return Some(Orientation::from_code(&self.graph, code));
                    }
                }
                None
            }
            IterState::Orders {
                perm,
                remaining,
                pos,
                seen,
            } => {
                while *remaining > 0 {
                    *remaining -= 1;
                    for (i, &v) in perm.iter().enumerate() {
                        pos[v] = i as u32;
                    }
                    let key = direction_key(&self.graph, pos);
                    let fresh = seen.insert(key);
                    let result = fresh.then(|| {
                        Orientation::from_linear_order(&self.graph, perm).expect("permutation")
                    });
                    next_permutation(perm);
                    if let Some(o) = result {
                        return Some(o);
                    }
                }
                None
            }
        }
    }
}

/// A minimum set of edges meeting every triangle, found by exact search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleCover {
    pub pi_t: usize,
    pub deletion_set: Vec<(usize, usize)>,
}

/// Exact minimum triangle-edge-deletion via branch and bound on an uncovered
/// triangle's three edges, lower-bounded by a greedy edge-disjoint packing.
pub fn min_triangle_edge_deletion(g: &SimpleGraph) -> Result<TriangleCover, SpectrumError> {
    min_triangle_edge_deletion_with_budget(g, DEFAULT_PI_T_NODE_BUDGET)
}

pub fn min_triangle_edge_deletion_with_budget(
    g: &SimpleGraph,
    node_budget: u64,
) -> Result<TriangleCover, SpectrumError> {
    let triangles = enumerate_triangles(g);
    if triangles.is_empty() {
        return Ok(TriangleCover {
            pi_t: 0,
            deletion_set: Vec::new(),
        });
    }
    let tri_edges: Vec<[usize; 3]> = triangles.iter().map(|t| t.edges).collect();
    let mut by_edge: Vec<Vec<u32>> = vec![Vec::new(); g.n_edges()];
    for (t, edges) in tri_edges.iter().enumerate() {
        for &e in edges {
            by_edge[e].push(t as u32);
        }
    }

    let mut search = CoverSearch {
        tri_edges,
        by_edge,
        n_edges: g.n_edges(),
        best: Vec::new(),
        nodes: 0,
        budget: node_budget,
    };
    search.best = search.greedy_cover();
    let mut covered = vec![0u8; search.tri_edges.len()];
    let mut chosen = Vec::new();
    let mut forbidden = vec![false; search.n_edges];
    search.recurse(&mut chosen, &mut covered, &mut forbidden)?;

    let mut deletion_set: Vec<(usize, usize)> = search.best.iter().map(|&e| g.edge(e)).collect();
    deletion_set.sort_unstable();
    Ok(TriangleCover {
        pi_t: deletion_set.len(),
        deletion_set,
    })
}

struct CoverSearch {
    tri_edges: Vec<[usize; 3]>,
    by_edge: Vec<Vec<u32>>,
    n_edges: usize,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CoverSearch {
    /// Max-coverage greedy cover; supplies the initial upper bound.
    fn greedy_cover(&self) -> Vec<usize> {
        let mut covered = vec![false; self.tri_edges.len()];
        let mut remaining = self.tri_edges.len();
        let mut chosen = Vec::new();
        while remaining > 0 {
            let (e, _) = (0..self.n_edges)
                .map(|e| {
                    let gain = self.by_edge[e]
                        .iter()
                        .filter(|&&t| !covered[t as usize])
                        .count();
                    (e, gain)
                })
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                .expect("graph has edges");
            chosen.push(e);
            for &t in &self.by_edge[e] {
                if !covered[t as usize] {
                    covered[t as usize] = true;
                    remaining -= 1;
                }
            }
        }
        chosen
    }

    /// Greedy edge-disjoint triangle packing over the uncovered triangles.
    fn packing_lower_bound(&self, covered: &[u8]) -> usize {
        let mut used = vec![false; self.n_edges];
        let mut packed = 0;
        for (t, edges) in self.tri_edges.iter().enumerate() {
            if covered[t] != 0 {
                continue;
            }
            if edges.iter().all(|&e| !used[e]) {
                for &e in edges {
                    used[e] = true;
                }
                packed += 1;
            }
        }
        packed
    }

    fn recurse(
        &mut self,
        chosen: &mut Vec<usize>,
        covered: &mut [u8],
        forbidden: &mut [bool],
    ) -> Result<(), SpectrumError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SpectrumError::TriangleSearchBudget {
                explored: self.nodes,
                budget: self.budget,
            });
        }
        let target = match covered.iter().position(|&c| c == 0) {
            None => {
                if chosen.len() < self.best.len() {
                    self.best = chosen.clone();
                }
                return Ok(());
            }
            Some(t) => t,
        };
        if chosen.len() + self.packing_lower_bound(covered) >= self.best.len() {
            return Ok(());
        }
        // branch on the edges of the first uncovered triangle, excluding
        // edges already tried in an earlier sibling so subtrees partition
        let edges = self.tri_edges[target];
        let mut newly_forbidden = Vec::new();
        for &e in &edges {
            if forbidden[e] {
                continue;
            }
            chosen.push(e);
            for &t in &self.by_edge[e] {
                covered[t as usize] += 1;
            }
            self.recurse(chosen, covered, forbidden)?;
            for &t in &self.by_edge[e] {
                covered[t as usize] -= 1;
            }
            chosen.pop();
            forbidden[e] = true;
            newly_forbidden.push(e);
        }
        for e in newly_forbidden {
            forbidden[e] = false;
        }
        Ok(())
    }
}

/// Graph identity block of the JSON result document.
#[derive(Debug, Clone, Serialize)]
pub struct GraphMeta {
    pub family: String,
    pub params: BTreeMap<String, u64>,
    pub n: usize,
    pub m: usize,
}

/// The JSON result document for a spectrum run. Field names and ordering are
/// part of the output contract.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumDocument {
    pub graph: GraphMeta,
    pub strategy: Strategy,
    pub enumerated: u64,
    pub achievable: Vec<usize>,
    pub counts: BTreeMap<usize, u64>,
    pub d_min: usize,
    pub d_max: usize,
    pub d_max_formula: usize,
    pub pi_t: Option<usize>,
    pub fully_orientable: bool,
    pub gaps: Vec<usize>,
    pub elapsed_ms: u64,
}

impl SpectrumDocument {
    pub fn new(
        g: &SimpleGraph,
        meta: GraphMeta,
        spectrum: &SpectrumResult,
        pi_t: Option<usize>,
        elapsed_ms: u64,
    ) -> Self {
        SpectrumDocument {
            graph: meta,
            strategy: spectrum.strategy,
            enumerated: spectrum.enumerated,
            achievable: spectrum.achievable.clone(),
            counts: spectrum.counts.clone(),
            d_min: spectrum.d_min,
            d_max: spectrum.d_max,
            d_max_formula: d_max_closed_form(g),
            pi_t,
            fully_orientable: spectrum.fully_orientable,
            gaps: spectrum.gaps.clone(),
            elapsed_ms,
        }
    }

    /// CSV rendering: header, one `d,count` row per achieved value, and a
    /// `#`-prefixed summary row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,count\n");
        for (d, c) in &self.counts {
            out.push_str(&format!("{d},{c}\n"));
        }
        let gaps = self
            .gaps
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!(
            "# d_min={} d_max={} fully_orientable={} gaps=[{}] enumerated={} strategy={:?}\n",
            self.d_min, self.d_max, self.fully_orientable, gaps, self.enumerated, self.strategy
        ));
        out
    }
}
