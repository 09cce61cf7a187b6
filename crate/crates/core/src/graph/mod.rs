//! Typed multigraphs realized from degree sequences by half-edge matching.
//!
//! Nodes are numbered globally: active nodes take ids `0..n1`, passive nodes
//! `n1..n1+n2`. Every edge carries a type tag determined by its endpoints.
//! Edges are kept in canonical order — sorted by `(min endpoint, max
//! endpoint, type code)` — so equal seeds produce byte-identical dumps.

mod io;
mod matching;

pub use io::{parse_edge_list, write_edge_list, write_weighted_edge_list, EdgeListFile, EdgeListHeader};
pub use matching::{generate_erased, generate_simple, match_halfedges, Generated};

use crate::degree::DegreeSpec;
use crate::error::GenError;

pub type NodeId = usize;

/// Edge type by endpoint node types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeType {
    /// Both endpoints active (code 11).
    ActiveActive,
    /// One active, one passive endpoint (code 12).
    ActivePassive,
    /// Both endpoints passive (code 22).
    PassivePassive,
}

impl EdgeType {
    pub const fn code(self) -> u8 {
        match self {
            EdgeType::ActiveActive => 11,
            EdgeType::ActivePassive => 12,
            EdgeType::PassivePassive => 22,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            11 => Some(EdgeType::ActiveActive),
            12 => Some(EdgeType::ActivePassive),
            22 => Some(EdgeType::PassivePassive),
            _ => None,
        }
    }
}

/// An undirected edge in canonical orientation (`u <= v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub kind: EdgeType,
}

/// A node-typed multigraph. May contain self-loops and parallel edges until
/// conditioned on simplicity. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedMultigraph {
    n1: usize,
    n2: usize,
    edges: Vec<Edge>,
    /// Per node: (neighbor, edge index). Self-loops appear twice.
    adj: Vec<Vec<(NodeId, usize)>>,
}

impl TypedMultigraph {
    /// Builds a graph from raw endpoint pairs, inferring and checking the
    /// type of each edge, canonicalizing orientation, and sorting.
    pub fn from_edges(
        n1: usize,
        n2: usize,
        raw: impl IntoIterator<Item = (NodeId, NodeId, EdgeType)>,
    ) -> Result<Self, GenError> {
        let n = n1 + n2;
        let mut edges = Vec::new();
        for (a, b, kind) in raw {
            if a >= n || b >= n {
                return Err(GenError::NodeRange {
                    node: a.max(b),
                    n,
                });
            }
            let expected = match (a < n1, b < n1) {
                (true, true) => EdgeType::ActiveActive,
                (false, false) => EdgeType::PassivePassive,
                _ => EdgeType::ActivePassive,
            };
            if kind != expected {
                return Err(GenError::TypeDiscipline {
                    u: a,
                    v: b,
                    kind: kind.code(),
                });
            }
            edges.push(Edge {
                u: a.min(b),
                v: a.max(b),
                kind,
            });
        }
        edges.sort_unstable_by_key(|e| (e.u, e.v, e.kind.code()));

        let mut adj = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, idx));
            adj[e.v].push((e.u, idx));
        }
        Ok(Self { n1, n2, edges, adj })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn node_count(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_active(&self, v: NodeId) -> bool {
        v < self.n1
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Incident (neighbor, edge index) pairs; self-loops listed twice.
    pub fn adjacency(&self, v: NodeId) -> &[(NodeId, usize)] {
        &self.adj[v]
    }

    /// Recovers the per-type degree sequences this graph realizes, counting
    /// self-loops twice.
    pub fn degree_spec(&self) -> DegreeSpec {
        let mut d11 = vec![0u32; self.n1];
        let mut d12 = vec![0u32; self.n1];
        let mut d21 = vec![0u32; self.n2];
        let mut d22 = vec![0u32; self.n2];
        for e in &self.edges {
            match e.kind {
                EdgeType::ActiveActive => {
                    d11[e.u] += 1;
                    d11[e.v] += 1;
                }
                EdgeType::ActivePassive => {
                    d12[e.u] += 1;
                    d21[e.v - self.n1] += 1;
                }
                EdgeType::PassivePassive => {
                    d22[e.u - self.n1] += 1;
                    d22[e.v - self.n1] += 1;
                }
            }
        }
        DegreeSpec::new(d11, d12, d21, d22)
    }
}

/// Self-loop and parallel-edge counts per edge type.
///
/// `parallel_*` counts excess copies: a pair of nodes joined by `m` equal
/// edges contributes `m - 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimplicityReport {
    pub self_loops_11: usize,
    pub self_loops_22: usize,
    pub parallel_11: usize,
    pub parallel_12: usize,
    pub parallel_22: usize,
}

impl SimplicityReport {
    pub fn self_loop_count(&self) -> usize {
        self.self_loops_11 + self.self_loops_22
    }

    pub fn parallel_edge_count(&self) -> usize {
        self.parallel_11 + self.parallel_12 + self.parallel_22
    }

    /// Simple iff every count is zero; equivalently, iff each of the three
    /// typed sub-multigraphs is simple.
    pub fn is_simple(&self) -> bool {
        self.self_loop_count() == 0 && self.parallel_edge_count() == 0
    }
}

/// Exact simplicity accounting. Relies on the canonical edge order: parallel
/// edges are adjacent in the sorted edge list.
pub fn check_simple(g: &TypedMultigraph) -> SimplicityReport {
    let mut report = SimplicityReport::default();
    let edges = g.edges();
    for (idx, e) in edges.iter().enumerate() {
        if e.u == e.v {
            match e.kind {
                EdgeType::ActiveActive => report.self_loops_11 += 1,
                EdgeType::PassivePassive => report.self_loops_22 += 1,
                EdgeType::ActivePassive => unreachable!("12-edges join distinct types"),
            }
        }
        if idx > 0 {
            let prev = &edges[idx - 1];
            if prev.u == e.u && prev.v == e.v && prev.kind == e.kind {
                match e.kind {
                    EdgeType::ActiveActive => report.parallel_11 += 1,
                    EdgeType::ActivePassive => report.parallel_12 += 1,
                    EdgeType::PassivePassive => report.parallel_22 += 1,
                }
            }
        }
    }
    report
}
