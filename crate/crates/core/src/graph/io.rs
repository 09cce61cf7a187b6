//! Edge-list dump format.
//!
//! ```text
//! # n1=4 n2=2 seed=42 attempts=3
//! 0 1 11 0.3182954504
//! 0 4 12 0.0912871852
//! 4 5 22
//! ```
//!
//! One edge per line as `u v type [weight]`; the weight column is present
//! for weighted dumps on type-11/12 edges and absent on type-22 edges.
//! Weights use shortest round-trip float formatting, so parse(write(g))
//! reproduces the graph exactly.

#[cfg(test)]
use super::Edge;
use super::{EdgeType, TypedMultigraph};
use crate::error::ParseError;
use crate::fpp::WeightedGraph;

/// Metadata line at the top of a dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeListHeader {
    pub n1: usize,
    pub n2: usize,
    pub seed: u64,
    pub attempts: u32,
}

/// A parsed dump: the graph, optional per-edge weights aligned with
/// `graph.edges()`, and the header.
#[derive(Debug, Clone)]
pub struct EdgeListFile {
    pub header: EdgeListHeader,
    pub graph: TypedMultigraph,
    /// Present iff the dump carried weights. `None` entries are type-22 edges.
    pub weights: Option<Vec<Option<f64>>>,
}

impl EdgeListFile {
    /// Reassembles a weighted graph when the dump carried weights.
    pub fn into_weighted(self) -> Option<Result<WeightedGraph, crate::error::FppError>> {
        let weights = self.weights?;
        Some(WeightedGraph::new(self.graph, weights))
    }
}

fn header_line(h: &EdgeListHeader) -> String {
    format!(
        "# n1={} n2={} seed={} attempts={}\n",
        h.n1, h.n2, h.seed, h.attempts
    )
}

/// Serializes an unweighted graph.
pub fn write_edge_list(g: &TypedMultigraph, header: &EdgeListHeader) -> String {
    let mut out = header_line(header);
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, e.kind.code()));
    }
    out
}

/// Serializes a weighted graph; type-22 edges carry no weight column.
pub fn write_weighted_edge_list(wg: &WeightedGraph, header: &EdgeListHeader) -> String {
    let mut out = header_line(header);
    for (e, w) in wg.graph().edges().iter().zip(wg.weights()) {
        match w {
            Some(w) => out.push_str(&format!("{} {} {} {}\n", e.u, e.v, e.kind.code(), w)),
            None => out.push_str(&format!("{} {} {}\n", e.u, e.v, e.kind.code())),
        }
    }
    out
}

/// Parses a dump produced by the writers above.
///
/// The weight column must be used consistently: either every 11/12 edge has
/// one (weighted dump) or none does.
pub fn parse_edge_list(text: &str) -> Result<EdgeListFile, ParseError> {
    let mut lines = text.lines().enumerate();

    let (hline_no, hline) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty file"))?;
    let header = parse_header(hline).map_err(|m| ParseError::new(hline_no + 1, m))?;

    let mut raw: Vec<(usize, usize, EdgeType)> = Vec::new();
    let mut weights: Vec<Option<f64>> = Vec::new();
    let mut saw_weight = false;
    let mut saw_bare_weighted_type = false;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 && toks.len() != 4 {
            return Err(ParseError::new(
                line_no,
                "expected 'u v type [weight]'".to_string(),
            ));
        }
        let u: usize = toks[0]
            .parse()
            .map_err(|_| ParseError::new(line_no, format!("bad node id '{}'", toks[0])))?;
        let v: usize = toks[1]
            .parse()
            .map_err(|_| ParseError::new(line_no, format!("bad node id '{}'", toks[1])))?;
        let code: u8 = toks[2]
            .parse()
            .map_err(|_| ParseError::new(line_no, format!("bad edge type '{}'", toks[2])))?;
        let kind = EdgeType::from_code(code)
            .ok_or_else(|| ParseError::new(line_no, format!("unknown edge type {code}")))?;
        let weight = if toks.len() == 4 {
            if kind == EdgeType::PassivePassive {
                return Err(ParseError::new(
                    line_no,
                    "type-22 edges do not carry weights",
                ));
            }
            saw_weight = true;
            let w: f64 = toks[3]
                .parse()
                .map_err(|_| ParseError::new(line_no, format!("bad weight '{}'", toks[3])))?;
            Some(w)
        } else {
            if kind != EdgeType::PassivePassive {
                saw_bare_weighted_type = true;
            }
            None
        };
        raw.push((u, v, kind));
        weights.push(weight);
    }

    if saw_weight && saw_bare_weighted_type {
        return Err(ParseError::new(
            1,
            "mixed weighted and unweighted 11/12 edges",
        ));
    }

    // from_edges re-sorts canonically; sort the weights with the same key.
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&i| {
        let (u, v, kind) = raw[i];
        (u.min(v), u.max(v), kind.code())
    });
    let sorted_weights: Vec<Option<f64>> = order.iter().map(|&i| weights[i]).collect();

    let graph = TypedMultigraph::from_edges(header.n1, header.n2, raw)
        .map_err(|e| ParseError::new(1, e.to_string()))?;

    Ok(EdgeListFile {
        header,
        graph,
        weights: saw_weight.then_some(sorted_weights),
    })
}

fn parse_header(line: &str) -> Result<EdgeListHeader, String> {
    let rest = line
        .trim()
        .strip_prefix('#')
        .ok_or("expected header line starting with '#'")?;
    let mut n1 = None;
    let mut n2 = None;
    let mut seed = None;
    let mut attempts = None;
    for tok in rest.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| format!("bad header token '{tok}'"))?;
        match key {
            "n1" => n1 = Some(value.parse().map_err(|_| format!("bad n1 '{value}'"))?),
            "n2" => n2 = Some(value.parse().map_err(|_| format!("bad n2 '{value}'"))?),
            "seed" => seed = Some(value.parse().map_err(|_| format!("bad seed '{value}'"))?),
            "attempts" => {
                attempts = Some(
                    value
                        .parse()
                        .map_err(|_| format!("bad attempts '{value}'"))?,
                )
            }
            other => return Err(format!("unknown header key '{other}'")),
        }
    }
    Ok(EdgeListHeader {
        n1: n1.ok_or("header missing n1")?,
        n2: n2.ok_or("header missing n2")?,
        seed: seed.ok_or("header missing seed")?,
        attempts: attempts.unwrap_or(1),
    })
}

/// Canonical-order check used by round-trip tests.
#[cfg(test)]
pub(crate) fn edges_sorted(edges: &[Edge]) -> bool {
    edges
        .windows(2)
        .all(|w| (w[0].u, w[0].v, w[0].kind.code()) <= (w[1].u, w[1].v, w[1].kind.code()))
}
