//! Label-setting search over walkable paths.
//!
//! Standard Dijkstra with one twist: only active nodes are expanded. Passive
//! nodes receive labels through their incident edges but never relax outgoing
//! edges, which is exactly the walkable-path restriction — equivalently, run
//! shortest paths on the active subgraph and then label each passive node by
//! the best active neighbor plus the connecting weight.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{finalize_result, FppResult, WeightedGraph};
use crate::error::FppError;
use crate::graph::NodeId;

#[derive(Debug, Clone, Copy)]
struct QueueEntry {
    dist: f64,
    node: NodeId,
}

// Min-heap behavior on a max-heap: smaller distance wins; ties broken by
// node index so replay is bit-for-bit deterministic.
impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QueueEntry {}

fn check_source(wg: &WeightedGraph, source: NodeId) -> Result<(), FppError> {
    if source >= wg.node_count() {
        return Err(FppError::SourceRange {
            node: source,
            n: wg.node_count(),
        });
    }
    if !wg.graph().is_active(source) {
        return Err(FppError::PassiveSource { node: source });
    }
    Ok(())
}

fn search(wg: &WeightedGraph, source: NodeId) -> Vec<f64> {
    let n = wg.node_count();
    let mut tau = vec![f64::INFINITY; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    tau[source] = 0.0;
    heap.push(QueueEntry {
        dist: 0.0,
        node: source,
    });

    while let Some(QueueEntry { dist, node }) = heap.pop() {
        if settled[node] {
            continue;
        }
        settled[node] = true;
        if !wg.graph().is_active(node) {
            continue; // labeled, never expanded
        }
        for &(nbr, w) in wg.weighted_adjacency(node) {
            let cand = dist + w;
            if cand < tau[nbr] {
                tau[nbr] = cand;
                heap.push(QueueEntry {
                    dist: cand,
                    node: nbr,
                });
            }
        }
    }
    tau
}

/// First passage times from an active `source` along walkable paths.
/// Unreachable nodes get `+inf` and are counted.
pub fn walkable_fpp(wg: &WeightedGraph, source: NodeId) -> Result<FppResult, FppError> {
    check_source(wg, source)?;
    Ok(finalize_result(wg.graph(), source, search(wg, source), false))
}

/// [`walkable_fpp`] plus, on request, the reach-time curve T(k): the time
/// until the active ball around the source holds k+1 nodes, read off the
/// sorted active labels.
pub fn flooding(
    wg: &WeightedGraph,
    source: NodeId,
    want_reach_curve: bool,
) -> Result<FppResult, FppError> {
    check_source(wg, source)?;
    Ok(finalize_result(
        wg.graph(),
        source,
        search(wg, source),
        want_reach_curve,
    ))
}
