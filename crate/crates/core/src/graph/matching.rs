//! Uniform half-edge matching and simplicity conditioning.
//!
//! Three independent matchings build the multigraph: a perfect matching on
//! the type-11 stubs, one on the type-22 stubs, and a uniform bijection
//! between the type-12 and type-21 stubs. Each matching is realized by a
//! Fisher–Yates shuffle of the stub array followed by sequential pairing,
//! which draws uniformly from the respective matching space. The RNG is
//! consumed in a fixed order (11 stubs, then 22, then 21), so a seed pins
//! the whole multigraph.

use rand::{Rng, RngExt};

use super::{check_simple, EdgeType, NodeId, TypedMultigraph};
use crate::degree::DegreeSpec;
use crate::error::GenError;

/// Output of the rejection sampler: the accepted graph plus how many
/// matchings were drawn to get it.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: TypedMultigraph,
    pub attempts: u32,
}

fn fisher_yates<R: Rng>(items: &mut [NodeId], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}

fn stub_array(degrees: &[u32], offset: usize) -> Vec<NodeId> {
    let mut stubs = Vec::with_capacity(degrees.iter().map(|&d| d as usize).sum());
    for (node, &d) in degrees.iter().enumerate() {
        for _ in 0..d {
            stubs.push(offset + node);
        }
    }
    stubs
}

/// Draws one uniform multigraph realization of `spec`.
///
/// Requires even type-11 and type-22 stub counts and balanced bipartite
/// margins; violations are precondition errors, not panics.
pub fn match_halfedges<R: Rng>(
    spec: &DegreeSpec,
    rng: &mut R,
) -> Result<TypedMultigraph, GenError> {
    spec.check_shape()
        .map_err(|e| GenError::Precondition(e.to_string()))?;
    if !spec.sum_d11().is_multiple_of(2) {
        return Err(GenError::Precondition(format!(
            "sum(d11) = {} is odd",
            spec.sum_d11()
        )));
    }
    if !spec.sum_d22().is_multiple_of(2) {
        return Err(GenError::Precondition(format!(
            "sum(d22) = {} is odd",
            spec.sum_d22()
        )));
    }
    if spec.sum_d12() != spec.sum_d21() {
        return Err(GenError::Precondition(format!(
            "sum(d12) = {} != sum(d21) = {}",
            spec.sum_d12(),
            spec.sum_d21()
        )));
    }

    let n1 = spec.n1();
    let mut edges = Vec::with_capacity(
        (spec.sum_d11() / 2 + spec.sum_d12() + spec.sum_d22() / 2) as usize,
    );

    let mut stubs11 = stub_array(&spec.d11, 0);
    fisher_yates(&mut stubs11, rng);
    for pair in stubs11.chunks_exact(2) {
        edges.push((pair[0], pair[1], EdgeType::ActiveActive));
    }

    let mut stubs22 = stub_array(&spec.d22, n1);
    fisher_yates(&mut stubs22, rng);
    for pair in stubs22.chunks_exact(2) {
        edges.push((pair[0], pair[1], EdgeType::PassivePassive));
    }

    let stubs12 = stub_array(&spec.d12, 0);
    let mut stubs21 = stub_array(&spec.d21, n1);
    fisher_yates(&mut stubs21, rng);
    for (&a, &p) in stubs12.iter().zip(stubs21.iter()) {
        edges.push((a, p, EdgeType::ActivePassive));
    }

    TypedMultigraph::from_edges(n1, spec.n2(), edges)
}

/// Rejection-samples a simple realization: rematch until [`check_simple`]
/// accepts, up to `max_attempts`. Conditional on acceptance the law is
/// uniform over simple graphs with the given typed degrees.
pub fn generate_simple<R: Rng>(
    spec: &DegreeSpec,
    rng: &mut R,
    max_attempts: u32,
) -> Result<Generated, GenError> {
    if max_attempts == 0 {
        return Err(GenError::Saturated { attempts: 0 });
    }
    for attempt in 1..=max_attempts {
        let graph = match_halfedges(spec, rng)?;
        if check_simple(&graph).is_simple() {
            return Ok(Generated {
                graph,
                attempts: attempt,
            });
        }
    }
    Err(GenError::Saturated {
        attempts: max_attempts,
    })
}

/// Off-model fallback for exploratory runs at scales where rejection is too
/// slow: matches once, drops self-loops, and collapses parallel edges. The
/// realized degrees may fall short of `spec`, so results are not
/// distributionally faithful to the simple-graph law.
pub fn generate_erased<R: Rng>(spec: &DegreeSpec, rng: &mut R) -> Result<Generated, GenError> {
    let multi = match_halfedges(spec, rng)?;
    let mut kept: Vec<(NodeId, NodeId, EdgeType)> = Vec::with_capacity(multi.edge_count());
    let mut last: Option<(NodeId, NodeId, u8)> = None;
    for e in multi.edges() {
        if e.u == e.v {
            continue;
        }
        let key = (e.u, e.v, e.kind.code());
        if last == Some(key) {
            continue;
        }
        kept.push((e.u, e.v, e.kind));
        last = Some(key);
    }
    let graph = TypedMultigraph::from_edges(multi.n1(), multi.n2(), kept)?;
    Ok(Generated { graph, attempts: 1 })
}
