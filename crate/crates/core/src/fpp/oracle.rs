//! Exhaustive walkable-path oracle for small graphs.
//!
//! Enumerates every simple walkable path from the source by depth-first
//! search over active nodes, labeling each visited endpoint with the
//! cheapest path seen. With strictly positive weights, restricting to
//! simple paths loses no generality, so the minima equal the true first
//! passage times. Used as an independent reference for the label-setting
//! search; capped at 12 nodes because the path count is factorial.

use super::{finalize_result, FppResult, WeightedGraph};
use crate::error::FppError;
use crate::graph::NodeId;

const NODE_CAP: usize = 12;

/// Exhaustive-enumeration first passage times from an active `source`.
/// Same result contract as [`crate::fpp::walkable_fpp`]. Refuses graphs
/// with more than 12 nodes.
pub fn brute_force_fpp(wg: &WeightedGraph, source: NodeId) -> Result<FppResult, FppError> {
    let n = wg.node_count();
    if n > NODE_CAP {
        return Err(FppError::OracleCap {
            nodes: n,
            cap: NODE_CAP,
        });
    }
    if source >= n {
        return Err(FppError::SourceRange { node: source, n });
    }
    if !wg.graph().is_active(source) {
        return Err(FppError::PassiveSource { node: source });
    }

    let mut tau = vec![f64::INFINITY; n];
    tau[source] = 0.0;
    let mut visited = vec![false; n];
    visited[source] = true;
    extend(wg, source, 0.0, &mut visited, &mut tau);
    Ok(finalize_result(wg.graph(), source, tau, false))
}

fn extend(
    wg: &WeightedGraph,
    node: NodeId,
    cost: f64,
    visited: &mut Vec<bool>,
    tau: &mut Vec<f64>,
) {
    for &(nbr, w) in wg.weighted_adjacency(node) {
        let cand = cost + w;
        if cand < tau[nbr] {
            tau[nbr] = cand;
        }
        // Extending through nbr keeps the path walkable only if nbr is
        // active; simplicity requires it unvisited. No cost-based pruning:
        // a costlier arrival may still open cheaper continuations because
        // its visited set differs.
        if wg.graph().is_active(nbr) && !visited[nbr] {
            visited[nbr] = true;
            extend(wg, nbr, cand, visited, tau);
            visited[nbr] = false;
        }
    }
}
