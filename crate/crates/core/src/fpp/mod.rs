//! Weighted first passage percolation with walkable-path semantics.
//!
//! A path is *walkable* when every node strictly before its endpoint is
//! active: flow originates at an active source, relays only through active
//! nodes, and may terminate at a node of either type. First passage times
//! tau(source, b) are infima of total edge weight over walkable paths, so
//! passive nodes receive labels but never forward them. Edges between two
//! passive nodes can never lie on a walkable path and carry no weight.

mod dijkstra;
mod oracle;

pub use dijkstra::{flooding, walkable_fpp};
pub use oracle::brute_force_fpp;

use rand::{Rng, RngExt};

use crate::degree::DegreeStats;
use crate::error::{DegreeError, FppError};
use crate::graph::{EdgeType, NodeId, TypedMultigraph};

/// A simple typed graph with strictly positive finite weights on every
/// type-11 and type-12 edge; type-22 edges are carried structurally but are
/// invisible to all first-passage computations.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    graph: TypedMultigraph,
    /// Aligned with `graph.edges()`; `None` exactly on type-22 edges.
    weights: Vec<Option<f64>>,
    /// Weighted adjacency over 11/12 edges, both directions.
    wadj: Vec<Vec<(NodeId, f64)>>,
}

impl WeightedGraph {
    /// Validates the weight vector against the edge list: one strictly
    /// positive finite weight per 11/12 edge, nothing on 22 edges.
    pub fn new(graph: TypedMultigraph, weights: Vec<Option<f64>>) -> Result<Self, FppError> {
        if weights.len() != graph.edge_count() {
            return Err(FppError::BadWeight {
                edge: weights.len(),
                reason: format!(
                    "{} weights for {} edges",
                    weights.len(),
                    graph.edge_count()
                ),
            });
        }
        for (idx, (e, w)) in graph.edges().iter().zip(&weights).enumerate() {
            match (e.kind, w) {
                (EdgeType::PassivePassive, Some(_)) => {
                    return Err(FppError::BadWeight {
                        edge: idx,
                        reason: "type-22 edge carries a weight".into(),
                    })
                }
                (EdgeType::PassivePassive, None) => {}
                (_, None) => {
                    return Err(FppError::BadWeight {
                        edge: idx,
                        reason: "missing weight on a traversable edge".into(),
                    })
                }
                (_, Some(w)) => {
                    if !(w.is_finite() && *w > 0.0) {
                        return Err(FppError::BadWeight {
                            edge: idx,
                            reason: format!("weight {w} is not finite and positive"),
                        });
                    }
                }
            }
        }
        let mut wadj = vec![Vec::new(); graph.node_count()];
        for (e, w) in graph.edges().iter().zip(&weights) {
            if let Some(w) = w {
                wadj[e.u].push((e.v, *w));
                wadj[e.v].push((e.u, *w));
            }
        }
        Ok(Self {
            graph,
            weights,
            wadj,
        })
    }

    pub fn graph(&self) -> &TypedMultigraph {
        &self.graph
    }

    pub fn weights(&self) -> &[Option<f64>] {
        &self.weights
    }

    /// Weighted neighbors of `v` (empty beyond 11/12 edges).
    pub fn weighted_adjacency(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.wadj[v]
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// A copy with every type-22 edge deleted. First passage times from any
    /// active source are identical on the two graphs.
    pub fn without_passive_edges(&self) -> WeightedGraph {
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (e, w) in self.graph.edges().iter().zip(&self.weights) {
            if e.kind != EdgeType::PassivePassive {
                edges.push((e.u, e.v, e.kind));
                weights.push(*w);
            }
        }
        let graph = TypedMultigraph::from_edges(self.graph.n1(), self.graph.n2(), edges)
            .expect("filtered edges stay valid");
        WeightedGraph::new(graph, weights).expect("filtered weights stay valid")
    }
}

/// Draws i.i.d. exponential weights: rate `lambda11` on type-11 edges and
/// `lambda12` on type-12 edges, via inverse CDF (`-ln(U)/lambda` with U
/// uniform on (0,1)), visiting edges in canonical order. Type-22 edges get
/// no weight. Rates must be strictly positive.
pub fn sample_weights<R: Rng>(
    graph: TypedMultigraph,
    lambda11: f64,
    lambda12: f64,
    rng: &mut R,
) -> WeightedGraph {
    assert!(lambda11 > 0.0, "lambda11 must be > 0");
    assert!(lambda12 > 0.0, "lambda12 must be > 0");
    let weights: Vec<Option<f64>> = graph
        .edges()
        .iter()
        .map(|e| match e.kind {
            EdgeType::ActiveActive => Some(exp_draw(lambda11, rng)),
            EdgeType::ActivePassive => Some(exp_draw(lambda12, rng)),
            EdgeType::PassivePassive => None,
        })
        .collect();
    WeightedGraph::new(graph, weights).expect("sampled weights are positive and finite")
}

fn exp_draw<R: Rng>(lambda: f64, rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return -u.ln() / lambda;
        }
    }
}

/// Single-source first passage result.
///
/// `flood1`/`flood2`/`flood` follow the pessimistic convention: they are
/// `+inf` whenever some node of the respective class is unreachable. The
/// `*_reachable` fields report the maximum over reachable nodes only; both
/// views are always available. With no passive nodes `flood2` is 0 so that
/// `flood == flood1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FppResult {
    pub source: NodeId,
    /// Per-node first passage time; `+inf` marks unreachable nodes.
    pub tau: Vec<f64>,
    /// Number of active nodes (tau[0..n1] are the active labels).
    pub n1: usize,
    /// Max tau over active nodes.
    pub flood1: f64,
    /// Max tau over passive nodes.
    pub flood2: f64,
    /// max(flood1, flood2).
    pub flood: f64,
    pub flood1_reachable: f64,
    pub flood2_reachable: f64,
    pub flood_reachable: f64,
    pub unreachable_count: usize,
    /// `curve[k-1]` is the time until k+1 active nodes are within reach,
    /// for k = 1.. (reachable active count - 1).
    pub reach_curve: Option<Vec<f64>>,
}

impl FppResult {
    /// Size of the active ball: active nodes with tau <= t.
    pub fn ball1_size(&self, t: f64) -> usize {
        self.tau[..self.n1].iter().filter(|&&x| x <= t).count()
    }

    /// T(k) from the reach curve, if computed and in range.
    pub fn reach_time(&self, k: usize) -> Option<f64> {
        let curve = self.reach_curve.as_ref()?;
        if k == 0 {
            return Some(0.0);
        }
        curve.get(k - 1).copied()
    }

    pub const CSV_HEADER: &'static str = "source,flood1,flood2,flood,unreachable_count";

    /// One CSV row. `pessimistic` selects the +inf convention; otherwise the
    /// reachable maxima are reported. Infinities print as `inf`.
    pub fn csv_row(&self, pessimistic: bool) -> String {
        let (f1, f2, f) = if pessimistic {
            (self.flood1, self.flood2, self.flood)
        } else {
            (
                self.flood1_reachable,
                self.flood2_reachable,
                self.flood_reachable,
            )
        };
        format!(
            "{},{},{},{},{}",
            self.source, f1, f2, f, self.unreachable_count
        )
    }

    /// Reach curve as `k,T(k)` lines, when present.
    pub fn reach_curve_csv(&self) -> Option<String> {
        let curve = self.reach_curve.as_ref()?;
        let mut out = String::from("k,T(k)\n");
        for (i, t) in curve.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, t));
        }
        Some(out)
    }
}

/// Builds an [`FppResult`] from a finished label map. Shared by the search
/// and the exhaustive oracle so both report floods identically.
pub(crate) fn finalize_result(
    graph: &TypedMultigraph,
    source: NodeId,
    tau: Vec<f64>,
    want_reach_curve: bool,
) -> FppResult {
    let n1 = graph.n1();
    let fold = |range: std::ops::Range<usize>| -> (f64, f64) {
        let mut max_all: f64 = 0.0;
        let mut max_reachable: f64 = 0.0;
        for &t in &tau[range] {
            max_all = max_all.max(t);
            if t.is_finite() {
                max_reachable = max_reachable.max(t);
            }
        }
        (max_all, max_reachable)
    };
    let (flood1, flood1_reachable) = fold(0..n1);
    let (flood2, flood2_reachable) = fold(n1..tau.len());
    let unreachable_count = tau.iter().filter(|t| t.is_infinite()).count();

    let reach_curve = want_reach_curve.then(|| {
        let mut active: Vec<f64> = tau[..n1].iter().copied().filter(|t| t.is_finite()).collect();
        active.sort_unstable_by(f64::total_cmp);
        // active[0] == 0 is the source itself; T(k) is the (k+1)-th smallest.
        active.drain(..1.min(active.len()));
        active
    });

    FppResult {
        source,
        n1,
        flood1,
        flood2,
        flood: flood1.max(flood2),
        flood1_reachable,
        flood2_reachable,
        flood_reachable: flood1_reachable.max(flood2_reachable),
        unreachable_count,
        reach_curve,
        tau,
    }
}

/// Neighborhood growth scales for reach-curve diagnostics:
/// `alpha = floor(ln(n1)^3)` and
/// `beta = floor(3 * sqrt(mu11/(nu11-1) * n1 * ln(n1)))`.
/// Natural logarithms throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleParams {
    pub alpha: u64,
    pub beta: u64,
}

/// Computes [`ScaleParams`]. Requires `n1 >= 2` and supercritical `nu11 > 1`.
pub fn scale_parameters(n1: usize, stats: &DegreeStats) -> Result<ScaleParams, DegreeError> {
    if n1 < 2 {
        return Err(DegreeError::Degenerate(format!(
            "n1 = {n1} is too small for scale parameters"
        )));
    }
    if stats.nu11 <= 1.0 {
        return Err(DegreeError::Subcritical { nu11: stats.nu11 });
    }
    let ln_n1 = (n1 as f64).ln();
    let alpha = ln_n1.powi(3).floor() as u64;
    let beta = (3.0 * (stats.mu11 / (stats.nu11 - 1.0) * n1 as f64 * ln_n1).sqrt()).floor() as u64;
    Ok(ScaleParams { alpha, beta })
}
