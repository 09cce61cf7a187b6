//! First passage percolation and flooding times on sparse random graphs with
//! two node types: active nodes relay flow, passive nodes only receive it.
//!
//! The crate builds random graphs from per-type degree sequences via uniform
//! half-edge matching (a configuration model with typed stubs), assigns
//! independent exponential weights to edges incident to active nodes, and
//! computes first passage times along *walkable* paths — paths whose every
//! node before the endpoint is active. On top of the single-run machinery sits
//! a seeded Monte Carlo harness that estimates the normalized flooding time
//! `Flood(A)/log kappa` of a uniformly chosen active source across a grid of
//! graph sizes and compares it against the asymptotic value
//! `1/(lambda11*(nu11-1)) + 1/min(lambda11*delta11, lambda12*delta21)`.
//!
#![forbid(unsafe_code)]
//! Module map:
//!
//! - [`degree`]: degree-sequence specs, graphicality checks, empirical
//!   statistics, the asymptotic limit, and reproducible family presets.
//! - [`graph`]: typed multigraphs from half-edge matching, simplicity
//!   accounting, rejection sampling, and the edge-list file format.
//! - [`fpp`]: exponential weight assignment, walkable-path Dijkstra, flooding
//!   times, reach-time diagnostics, and an exhaustive path oracle.
//! - [`experiment`]: plans, child-seed derivation, parallel replication,
//!   summaries, and convergence reporting.

pub mod degree;
pub mod error;
pub mod experiment;
pub mod fpp;
pub mod graph;

pub use degree::{
    compute_stats, condition_diagnostics, make_family, theoretical_limit, validate_spec,
    ConditionDiagnostics, DegreeSpec, DegreeStats, Family, Rule, RuleResult, ValidationReport,
};
pub use error::{DegreeError, ExperimentError, FppError, GenError, ParseError};
pub use experiment::{
    child_seed, convergence_report, run_experiment, ConvergenceReport, ExperimentOutcome,
    ExperimentPlan, KappaSummary, ReplicateRecord, ReplicateStatus,
};
pub use fpp::{
    brute_force_fpp, flooding, sample_weights, scale_parameters, walkable_fpp, FppResult,
    ScaleParams, WeightedGraph,
};
pub use graph::{
    check_simple, generate_erased, generate_simple, match_halfedges, Edge, EdgeType, Generated,
    NodeId, SimplicityReport, TypedMultigraph,
};
