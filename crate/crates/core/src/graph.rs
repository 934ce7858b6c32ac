//! Undirected simple graphs and the generators the rest of the crate runs on:
//! cycles, powers of cycles, complete and complete-multipartite graphs.
//!
//! Vertices are always labeled `0..n-1`. Edges are stored as `(u, v)` pairs
//! with `u < v` and keep a stable index given by insertion order of the
//! generator; orientations refer to edges by that index.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("cycle graphs need at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("complete graphs need at least 1 vertex")]
    EmptyGraph,
    #[error("complete multipartite graphs need at least 2 parts, got {0}")]
    TooFewParts(usize),
    #[error("graph powers need exponent >= 1")]
    ZeroPower,
    #[error("graph powers are defined for connected graphs only ({0} components)")]
    Disconnected(usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) out of range for {2} vertices")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("canonical forms are computed by exhaustive permutation; {0} vertices exceeds the limit of {1}")]
    TooLargeForCanonicalForm(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Immutable undirected simple graph with canonically stored, indexed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl SimpleGraph {
    /// Builds a graph from an edge list. Endpoint order within a pair does
    /// not matter; loops and duplicates are rejected.
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut canonical = Vec::with_capacity(edges.len());
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n_vertices];
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n_vertices {
                return Err(GraphError::EdgeOutOfRange(u, v, n_vertices));
            }
            if edge_index.insert((u, v), canonical.len()).is_some() {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            canonical.push((u, v));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Self {
            n_vertices,
            edges: canonical,
            adjacency,
            edge_index,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in index order, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Index of edge `{u, v}` if present, in either endpoint order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_index.get(&key).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Wraps the graph in a shared handle for orientations to hang on to.
    pub fn shared(self) -> SharedGraph {
        SharedGraph::new(self)
    }

    /// Serializes to the plain text format: first line `n m`, then one
    /// `u v` line per edge in index order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n_vertices, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the text format written by [`SimpleGraph::to_text`]. Blank
    /// lines and lines starting with `#` are ignored.
    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut data_lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = data_lines.next().ok_or(GraphError::Parse {
            line: 0,
            message: "missing 'n m' header line".into(),
        })?;
        let mut parts = header.split_whitespace();
        let parse_field =
            |tok: Option<&str>, line: usize, what: &str| -> Result<usize, GraphError> {
                tok.ok_or_else(|| GraphError::Parse {
                    line,
                    message: format!("missing {what}"),
                })?
                .parse()
                .map_err(|_| GraphError::Parse {
                    line,
                    message: format!("invalid {what}"),
                })
            };
        let n = parse_field(parts.next(), line_no, "vertex count")?;
        let m = parse_field(parts.next(), line_no, "edge count")?;
        if parts.next().is_some() {
            return Err(GraphError::Parse {
                line: line_no,
                message: "trailing tokens after 'n m'".into(),
            });
        }

        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, line) = data_lines.next().ok_or(GraphError::Parse {
                line: 0,
                message: format!("expected {m} edge lines"),
            })?;
            let mut parts = line.split_whitespace();
            let u = parse_field(parts.next(), line_no, "edge tail")?;
            let v = parse_field(parts.next(), line_no, "edge head")?;
            if parts.next().is_some() {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: "trailing tokens after 'u v'".into(),
                });
            }
            if u >= v {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: format!("edges must satisfy u < v, got {u} {v}"),
                });
            }
            edges.push((u, v));
        }
        if let Some((line_no, _)) = data_lines.next() {
            return Err(GraphError::Parse {
                line: line_no,
                message: "unexpected data after the last edge".into(),
            });
        }
        Self::new(n, edges)
    }
}

/// Shared immutable handle; safe to hand to concurrent readers.
pub type SharedGraph = std::sync::Arc<SimpleGraph>;

/// A 3-clique: vertices sorted ascending plus the indices of its three edges
/// in the host graph, ordered `(v0,v1)`, `(v0,v2)`, `(v1,v2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub edges: [usize; 3],
}

/// The cycle `C_n = v_0 v_1 ... v_{n-1} v_0` for `n >= 3`.
pub fn cycle_graph(n: usize) -> Result<SimpleGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::CycleTooSmall(n));
    }
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SimpleGraph::new(n, edges)
}

/// The m-th power of a connected graph: `u ~ v` iff `1 <= dist(u, v) <= m`.
pub fn graph_power(g: &SimpleGraph, m: usize) -> Result<SimpleGraph, GraphError> {
    if m == 0 {
        return Err(GraphError::ZeroPower);
    }
    let c = component_count(g);
    if c != 1 {
        return Err(GraphError::Disconnected(c));
    }
    let n = g.n_vertices();
    let mut edges = Vec::new();
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for u in 0..n {
        dist.fill(usize::MAX);
        dist[u] = 0;
        queue.clear();
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            if dist[x] == m {
                continue;
            }
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        for (v, &d) in dist.iter().enumerate().skip(u + 1) {
            if d != usize::MAX && d <= m {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, edges)
}

/// `C_n^k`, the k-th power of the cycle on `n` vertices.
pub fn cycle_power(n: usize, k: usize) -> Result<SimpleGraph, GraphError> {
    graph_power(&cycle_graph(n)?, k)
}

pub fn complete_graph(n: usize) -> Result<SimpleGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    SimpleGraph::new(n, edges)
}

/// `K_{r(n)}`: r partite blocks of n vertices each, vertices `b*n..(b+1)*n`
/// forming block `b`; edges join vertices in different blocks.
pub fn complete_multipartite(r: usize, n: usize) -> Result<SimpleGraph, GraphError> {
    if r < 2 {
        return Err(GraphError::TooFewParts(r));
    }
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let total = r * n;
    let mut edges = Vec::new();
    for u in 0..total {
        for v in u + 1..total {
            if u / n != v / n {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(total, edges)
}

/// Every 3-clique exactly once, sorted lexicographically by vertex triple.
pub fn enumerate_triangles(g: &SimpleGraph) -> Vec<Triangle> {
    let mut triangles = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        // common neighbors above v, so each triangle is found at its lex-least edge
        for &w in g.neighbors(u) {
            if w > v && g.has_edge(v, w) {
                triangles.push(Triangle {
                    vertices: [u, v, w],
                    edges: [
                        e,
                        g.edge_index(u, w).expect("adjacency implies edge"),
                        g.edge_index(v, w).expect("checked above"),
                    ],
                });
            }
        }
    }
    triangles.sort_unstable();
    triangles
}

pub fn component_count(g: &SimpleGraph) -> usize {
    let n = g.n_vertices();
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    let mut components = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    components
}

const CANONICAL_FORM_LIMIT: usize = 10;

/// Lexicographically least relabeled edge list over all vertex permutations.
/// Exhaustive, so restricted to small graphs; meant for isomorphism checks
/// in tests and spot checks, not as a general-purpose engine.
pub fn canonical_edge_form(g: &SimpleGraph) -> Result<Vec<(usize, usize)>, GraphError> {
    let n = g.n_vertices();
    if n > CANONICAL_FORM_LIMIT {
        return Err(GraphError::TooLargeForCanonicalForm(
            n,
            CANONICAL_FORM_LIMIT,
        ));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut relabeled = Vec::with_capacity(g.n_edges());
    loop {
        relabeled.clear();
        for &(u, v) in g.edges() {
            let (a, b) = (perm[u], perm[v]);
            relabeled.push(if a < b { (a, b) } else { (b, a) });
        }
        relabeled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.unwrap_or_default())
}

/// Isomorphism by canonical-form comparison; same size limit as
/// [`canonical_edge_form`].
pub fn are_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Result<bool, GraphError> {
    if a.n_vertices() != b.n_vertices() || a.n_edges() != b.n_edges() {
        return Ok(false);
    }
    Ok(canonical_edge_form(a)? == canonical_edge_form(b)?)
}

/// Advances to the lexicographic successor; false once `perm` is the last one.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}
