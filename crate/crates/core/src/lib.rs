//! Dependent-arc spectra of acyclic orientations, and explicit
//! machine-verified constructions showing that the square of a cycle is
//! fully orientable for every `n >= 7`.
//!
//! An acyclic orientation's *dependent* arcs are those whose reversal would
//! create a directed cycle. Writing `d(D)` for their number, a graph is
//! *fully orientable* when every value between `d_min(G)` and
//! `d_max(G) = |E| - |V| + c` is achieved by some acyclic orientation.
//!
//! The crate provides:
//! - [`graph`]: cycle powers, complete and complete-multipartite generators,
//!   triangles, components, and a plain text exchange format;
//! - [`orientation`]: orientations, acyclicity, dependent/cover arc reports,
//!   arc reversal, DOT export;
//! - [`spectrum`]: exhaustive enumeration of acyclic orientations under two
//!   interchangeable strategies, the dependency spectrum, and an exact
//!   minimum triangle-edge-deletion search;
//! - [`constructions`]: the explicit orientations `D_0` of `C_n^2` with
//!   `d = ceil(n/2) + 1`, triangle-killing deletion sets, reversal sequences
//!   realizing every value up to `n + 1`, and an end-to-end verifier.

pub mod constructions;
pub mod graph;
pub mod orientation;
pub mod spectrum;

pub use graph::{
    complete_graph, complete_multipartite, component_count, cycle_graph, cycle_power,
    enumerate_triangles, graph_power, GraphError, SharedGraph, SimpleGraph, Triangle,
};
pub use orientation::{Arc, DependencyReport, Orientation, OrientationError};
pub use spectrum::{
    d_max_closed_form, dependency_spectrum, enumerate_acyclic_orientations, full_orientability,
    min_triangle_edge_deletion, SpectrumError, SpectrumResult, Strategy, StrategyChoice,
    TriangleCover, DEFAULT_BUDGET,
};

pub use constructions::{
    construct_d0, construct_dmax_orientation, construct_reversal_sequence, lemma2_deletion_set,
    verify_theorems, ConstructionError, OrientationSequence, SequenceEntry, VerificationReport,
};
