//! Error types shared across the crate.

use thiserror::Error;

/// Parse failure in one of the text formats (degree spec files, edge-list
/// dumps, experiment plans). Carries the 1-based line number.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Errors from degree-sequence handling: structural shape problems,
/// degenerate statistics, and family construction failures.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum DegreeError {
    /// Sequence lengths are inconsistent (not a validation failure: the
    /// object does not even have a well-defined shape).
    #[error("sequence {name} has length {got}, expected {expected}")]
    Shape {
        name: &'static str,
        expected: usize,
        got: usize,
    },
    /// No active nodes, or every active-to-active degree is zero.
    #[error("degenerate spec: {0}")]
    Degenerate(String),
    /// The supercriticality hypothesis nu11 > 1 does not hold.
    #[error("subcritical regime: nu11 = {nu11} <= 1")]
    Subcritical { nu11: f64 },
    /// A rate parameter must be strictly positive.
    #[error("rate parameter {name} must be > 0, got {value}")]
    InvalidRate { name: &'static str, value: f64 },
    /// min(lambda11*delta11, lambda12*delta21) is zero; the limit formula
    /// has no finite value.
    #[error("minimum weighted degree is zero; limit is undefined")]
    ZeroMinDegree,
    /// Bipartite half-edge count N is zero where a positive count is required.
    #[error("no bipartite half-edges (N = 0)")]
    EmptyBipartite,
    /// A family preset cannot be realized with the given parameters.
    #[error("family construction failed: {0}")]
    Family(String),
    /// Totals exceed the supported range (entries <= 2^31-1, N <= 2^40).
    #[error("degree totals exceed supported range: {0}")]
    Overflow(String),
}

/// Errors from the half-edge matching generator.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GenError {
    /// Input spec violates a matching precondition (parity/balance/shape).
    #[error("matching precondition violated: {0}")]
    Precondition(String),
    /// Rejection sampling did not find a simple graph within the attempt cap.
    #[error("no simple graph after {attempts} attempts")]
    Saturated { attempts: u32 },
    /// An explicit edge list violates the node-type discipline.
    #[error("edge ({u}, {v}) of type {kind} violates node types")]
    TypeDiscipline { u: usize, v: usize, kind: u8 },
    /// An edge endpoint is out of range.
    #[error("edge endpoint {node} out of range for {n} nodes")]
    NodeRange { node: usize, n: usize },
}

/// Errors from first-passage computations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum FppError {
    /// First passage times are defined from active sources only.
    #[error("source node {node} is passive; sources must be active")]
    PassiveSource { node: usize },
    /// Source node id out of range.
    #[error("source node {node} out of range for {n} nodes")]
    SourceRange { node: usize, n: usize },
    /// The exhaustive path oracle refuses graphs above its size cap.
    #[error("graph has {nodes} nodes, oracle cap is {cap}")]
    OracleCap { nodes: usize, cap: usize },
    /// A weight is missing, non-finite, or not strictly positive.
    #[error("invalid weight on edge {edge}: {reason}")]
    BadWeight { edge: usize, reason: String },
}

/// Errors from experiment orchestration.
#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid plan: {0}")]
    Plan(String),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Fpp(#[from] FppError),
    /// More than half of the replicates at one kappa failed to generate.
    #[error("aborted at kappa={kappa}: {failed}/{replicates} replicates failed to generate")]
    TooManyFailures {
        kappa: u64,
        failed: u32,
        replicates: u32,
        /// (kappa, failed, replicates) for every kappa processed so far.
        table: Vec<(u64, u32, u32)>,
    },
    /// Convergence reporting refuses to judge underpowered data.
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}
