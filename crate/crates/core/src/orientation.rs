//! Orientations of a simple graph and their dependent arcs.
//!
//! An orientation assigns a direction to every edge. For an acyclic
//! orientation, an arc `u -> v` is *dependent* when some other directed path
//! from `u` to `v` exists (equivalently, the arc lies outside the transitive
//! reduction); reversing a dependent arc creates a directed cycle. The
//! non-dependent arcs are the *cover* arcs.
//!
//! Dependence is computed from per-vertex descendant bitsets filled in
//! reverse topological order: `u -> v` is dependent iff `v` is reachable
//! from some out-neighbor of `u`. That keeps the check near
//! `O(n * m / wordsize)` per orientation, which dominates enumeration cost.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{SharedGraph, SimpleGraph};

/// A directed edge, exposed as a `(tail, head)` vertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub fn new(tail: usize, head: usize) -> Self {
        Self { tail, head }
    }

    /// The underlying undirected edge as `(min, max)`.
    pub fn edge(&self) -> (usize, usize) {
        (self.tail.min(self.head), self.tail.max(self.head))
    }
}

impl From<(usize, usize)> for Arc {
    fn from((tail, head): (usize, usize)) -> Self {
        Self { tail, head }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

impl Serialize for Arc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientationError {
    #[error("order is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("no edge {{{u}, {v}}} in the host graph")]
    NoSuchEdge { u: usize, v: usize },
    #[error("arc {arc} is oppositely directed in this orientation")]
    OppositeDirection { arc: Arc },
    #[error("arc {arc} listed more than once")]
    DuplicateArc { arc: Arc },
    #[error("edge {{{u}, {v}}} was given no direction")]
    UndirectedEdge { u: usize, v: usize },
    #[error("orientation has a directed cycle; dependent arcs are defined only for acyclic orientations")]
    CyclicOrientation,
}

/// Dependent and cover arcs of an acyclic orientation, with `d = |dependent|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyReport {
    pub dependent: BTreeSet<Arc>,
    pub covers: BTreeSet<Arc>,
    pub d: usize,
}

/// A direction bit per edge of a host graph: bit clear means the edge points
/// from the lower to the higher label. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    graph: SharedGraph,
    bits: Vec<u64>,
}

fn word_count(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl Orientation {
    fn from_bits(graph: SharedGraph, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), word_count(graph.n_edges()));
        Self { graph, bits }
    }

    /// Directs every edge from the endpoint earlier in `order` to the later
    /// one. The result is acyclic for any permutation.
    pub fn from_linear_order(
        graph: &SharedGraph,
        order: &[usize],
    ) -> Result<Self, OrientationError> {
        let n = graph.n_vertices();
        let mut pos = vec![usize::MAX; n];
        if order.len() != n {
            return Err(OrientationError::NotAPermutation { n });
        }
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(OrientationError::NotAPermutation { n });
            }
            pos[v] = i;
        }
        let mut bits = vec![0u64; word_count(graph.n_edges())];
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            if pos[u] > pos[v] {
                bits[e / 64] |= 1 << (e % 64);
            }
        }
        Ok(Self::from_bits(graph.clone(), bits))
    }

    /// Builds an orientation from an explicit arc list that must cover every
    /// edge of the host graph exactly once.
    pub fn from_arcs(graph: &SharedGraph, arcs: &[Arc]) -> Result<Self, OrientationError> {
        let m = graph.n_edges();
        let mut bits = vec![0u64; word_count(m)];
        let mut seen = vec![false; m];
        for &arc in arcs {
            let e = graph
                .edge_index(arc.tail, arc.head)
                .ok_or(OrientationError::NoSuchEdge {
                    u: arc.tail.min(arc.head),
                    v: arc.tail.max(arc.head),
                })?;
            if seen[e] {
                return Err(OrientationError::DuplicateArc { arc });
            }
            seen[e] = true;
            if arc.tail > arc.head {
                bits[e / 64] |= 1 << (e % 64);
            }
        }
        if let Some(e) = seen.iter().position(|&s| !s) {
            let (u, v) = graph.edge(e);
            return Err(OrientationError::UndirectedEdge { u, v });
        }
        Ok(Self::from_bits(graph.clone(), bits))
    }

    pub(crate) fn from_code(graph: &SharedGraph, code: u64) -> Self {
        debug_assert!(graph.n_edges() <= 64);
        let mut bits = vec![0u64; word_count(graph.n_edges())];
        if !bits.is_empty() {
            bits[0] = code;
        }
        Self::from_bits(graph.clone(), bits)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> &SharedGraph {
        &self.graph
    }

    /// True when edge `e` is directed from its higher to its lower endpoint.
    pub fn is_reversed(&self, e: usize) -> bool {
        self.bits[e / 64] >> (e % 64) & 1 == 1
    }

    /// The arc carried by edge index `e`.
    pub fn arc_of_edge(&self, e: usize) -> Arc {
        let (u, v) = self.graph.edge(e);
        if self.is_reversed(e) {
            Arc::new(v, u)
        } else {
            Arc::new(u, v)
        }
    }

    /// All arcs in edge-index order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.graph.n_edges()).map(|e| self.arc_of_edge(e))
    }

    /// Raw direction words, one bit per edge index; a compact identity key
    /// for orientations of the same host graph.
    pub fn direction_words(&self) -> &[u64] {
        &self.bits
    }

    /// A topological order of the digraph, or `None` if it has a directed
    /// cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut analyzer = DagAnalyzer::new(&self.graph);
        analyzer
            .kahn(|e| self.is_reversed(e))
            .map(|topo| topo.iter().map(|&v| v as usize).collect())
    }

    pub fn is_acyclic(&self) -> bool {
        let mut analyzer = DagAnalyzer::new(&self.graph);
        analyzer.kahn(|e| self.is_reversed(e)).is_some()
    }

    /// Splits the arc set into dependent and cover arcs.
    pub fn dependent_arcs(&self) -> Result<DependencyReport, OrientationError> {
        let mut analyzer = DagAnalyzer::new(&self.graph);
        if analyzer.kahn(|e| self.is_reversed(e)).is_none() {
            return Err(OrientationError::CyclicOrientation);
        }
        analyzer.fill_reach();
        let mut dependent = BTreeSet::new();
        let mut covers = BTreeSet::new();
        for e in 0..self.graph.n_edges() {
            let arc = self.arc_of_edge(e);
            if analyzer.arc_is_dependent(arc.tail, arc.head) {
                dependent.insert(arc);
            } else {
                covers.insert(arc);
            }
        }
        let d = dependent.len();
        Ok(DependencyReport {
            dependent,
            covers,
            d,
        })
    }

    /// Returns a new orientation with exactly the listed arcs flipped. Every
    /// arc must be present with the stated direction. Acyclicity of the
    /// result is not guaranteed; callers re-check.
    pub fn reverse_arcs(&self, arcs: &[Arc]) -> Result<Self, OrientationError> {
        let mut bits = self.bits.clone();
        let mut touched = vec![false; self.graph.n_edges()];
        for &arc in arcs {
            let e =
                self.graph
                    .edge_index(arc.tail, arc.head)
                    .ok_or(OrientationError::NoSuchEdge {
                        u: arc.tail.min(arc.head),
                        v: arc.tail.max(arc.head),
                    })?;
            if self.arc_of_edge(e) != arc {
                return Err(OrientationError::OppositeDirection { arc });
            }
            if touched[e] {
                return Err(OrientationError::DuplicateArc { arc });
            }
            touched[e] = true;
            bits[e / 64] ^= 1 << (e % 64);
        }
        Ok(Self::from_bits(self.graph.clone(), bits))
    }

    /// DOT rendering with dependent arcs emphasized. Arcs are sorted by
    /// `(tail, head)` so output is deterministic.
    pub fn to_dot(&self) -> Result<String, OrientationError> {
        let report = self.dependent_arcs()?;
        let mut out = String::from("digraph {\n");
        for v in 0..self.graph.n_vertices() {
            out.push_str(&format!("  {v};\n"));
        }
        let mut arcs: Vec<Arc> = self.arcs().collect();
        arcs.sort_unstable();
        for arc in arcs {
            if report.dependent.contains(&arc) {
                out.push_str(&format!(
                    "  {} -> {} [style=bold, class=dependent];\n",
                    arc.tail, arc.head
                ));
            } else {
                out.push_str(&format!("  {} -> {};\n", arc.tail, arc.head));
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Reusable workspace for acyclicity tests and dependent-arc counting.
/// The enumeration loops in the spectrum module call this millions of times,
/// so everything is flat arrays rebuilt in place.
pub(crate) struct DagAnalyzer {
    n: usize,
    words: usize,
    edge_lo: Vec<u32>,
    edge_hi: Vec<u32>,
    indegree: Vec<u32>,
    succ_start: Vec<u32>,
    cursor: Vec<u32>,
    succ: Vec<u32>,
    topo: Vec<u32>,
    topo_len: usize,
    reach: Vec<u64>,
    acc: Vec<u64>,
}

impl DagAnalyzer {
    pub fn new(g: &SimpleGraph) -> Self {
        let n = g.n_vertices();
        let m = g.n_edges();
        let words = word_count(n).max(1);
        Self {
            n,
            words,
            edge_lo: g.edges().iter().map(|&(u, _)| u as u32).collect(),
            edge_hi: g.edges().iter().map(|&(_, v)| v as u32).collect(),
            indegree: vec![0; n],
            succ_start: vec![0; n + 1],
            cursor: vec![0; n],
            succ: vec![0; m],
            topo: vec![0; n],
            topo_len: 0,
            reach: vec![0; n * words],
            acc: vec![0; words],
        }
    }

    /// Builds the successor lists and indegrees for the orientation given by
    /// the per-edge `reversed` predicate.
    fn build_succ(&mut self, reversed: &impl Fn(usize) -> bool) {
        let n = self.n;
        self.indegree[..n].fill(0);
        self.cursor[..n].fill(0);
        for e in 0..self.succ.len() {
            let (tail, head) = if reversed(e) {
                (self.edge_hi[e], self.edge_lo[e])
            } else {
                (self.edge_lo[e], self.edge_hi[e])
            };
            self.cursor[tail as usize] += 1; // outdegree for now
            self.indegree[head as usize] += 1;
        }
        let mut acc = 0u32;
        for v in 0..n {
            self.succ_start[v] = acc;
            acc += self.cursor[v];
            self.cursor[v] = self.succ_start[v];
        }
        self.succ_start[n] = acc;
        for e in 0..self.succ.len() {
            let (tail, head) = if reversed(e) {
                (self.edge_hi[e], self.edge_lo[e])
            } else {
                (self.edge_lo[e], self.edge_hi[e])
            };
            self.succ[self.cursor[tail as usize] as usize] = head;
            self.cursor[tail as usize] += 1;
        }
    }

    /// Runs Kahn's algorithm on the orientation given by `reversed`.
    /// Returns the topological order on success.
    pub fn kahn(&mut self, reversed: impl Fn(usize) -> bool) -> Option<&[u32]> {
        let n = self.n;
        self.build_succ(&reversed);

        // Kahn: topo doubles as the work queue.
        let mut len = 0usize;
        for v in 0..n {
            if self.indegree[v] == 0 {
                self.topo[len] = v as u32;
                len += 1;
            }
        }
        let mut head = 0usize;
        while head < len {
            let v = self.topo[head] as usize;
            head += 1;
            for i in self.succ_start[v]..self.succ_start[v + 1] {
                let w = self.succ[i as usize] as usize;
                self.indegree[w] -= 1;
                if self.indegree[w] == 0 {
                    self.topo[len] = w as u32;
                    len += 1;
                }
            }
        }
        self.topo_len = len;
        if len == n {
            Some(&self.topo)
        } else {
            None
        }
    }

    /// Fills `reach[v]` = set of vertices reachable from `v` in one or more
    /// steps, walking the last `kahn` order backwards. Requires acyclicity.
    pub fn fill_reach(&mut self) {
        debug_assert_eq!(self.topo_len, self.n);
        let words = self.words;
        for idx in (0..self.n).rev() {
            let v = self.topo[idx] as usize;
            self.acc.fill(0);
            for i in self.succ_start[v]..self.succ_start[v + 1] {
                let w = self.succ[i as usize] as usize;
                for j in 0..words {
                    self.acc[j] |= self.reach[w * words + j];
                }
                self.acc[w / 64] |= 1 << (w % 64);
            }
            self.reach[v * words..(v + 1) * words].copy_from_slice(&self.acc);
        }
    }

    /// After `fill_reach`: is the arc `tail -> head` dependent?
    pub fn arc_is_dependent(&self, tail: usize, head: usize) -> bool {
        let words = self.words;
        let word = head / 64;
        let mask = 1u64 << (head % 64);
        for i in self.succ_start[tail]..self.succ_start[tail + 1] {
            let w = self.succ[i as usize] as usize;
            if self.reach[w * words + word] & mask != 0 {
                return true;
            }
        }
        false
    }

    /// Number of dependent arcs of the current (acyclic) orientation.
    pub fn count_dependent(&mut self) -> usize {
        self.fill_reach();
        let words = self.words;
        let mut d = 0usize;
        for u in 0..self.n {
            let lo = self.succ_start[u] as usize;
            let hi = self.succ_start[u + 1] as usize;
            if hi - lo < 2 {
                continue; // a single out-arc can never be dependent
            }
            self.acc.fill(0);
            for i in lo..hi {
                let w = self.succ[i] as usize;
                for j in 0..words {
                    self.acc[j] |= self.reach[w * words + j];
                }
            }
            for i in lo..hi {
                let w = self.succ[i] as usize;
                d += (self.acc[w / 64] >> (w % 64) & 1) as usize;
            }
        }
        d
    }

    /// Acyclicity plus dependent-arc count in one shot; `None` if cyclic.
    pub fn analyze(&mut self, reversed: impl Fn(usize) -> bool) -> Option<usize> {
        self.kahn(reversed)?;
        Some(self.count_dependent())
    }

    /// Dependent-arc count when a topological order is already known (any
    /// linear order inducing the orientation qualifies); skips Kahn.
    pub fn analyze_ordered(&mut self, reversed: impl Fn(usize) -> bool, order: &[u32]) -> usize {
        debug_assert_eq!(order.len(), self.n);
        self.build_succ(&reversed);
        self.topo.copy_from_slice(order);
        self.topo_len = self.n;
        self.count_dependent()
    }
}
