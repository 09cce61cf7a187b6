//! CSV emission for replicate records and per-kappa summaries.
//!
//! Formatting is byte-deterministic: floats use Rust's shortest round-trip
//! `Display`, `+inf` prints as `inf`, and rows follow the record order. Wall
//! times are deliberately not serialized — two runs of the same plan must
//! produce identical bytes regardless of machine load or thread count.

use super::{ConvergenceReport, KappaSummary, ReplicateRecord, ReplicateStatus};

pub const RECORDS_HEADER: &str =
    "kappa,replicate,seed,n1,n2,attempts,source,flood,flood1,flood2,normalized,unreachable,status";

pub const SUMMARY_HEADER: &str =
    "kappa,n_success,median_norm,mean_norm,q10,q90,limit,abs_gap";

impl ReplicateStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ReplicateStatus::Success => "success",
            ReplicateStatus::Discarded => "discarded",
            ReplicateStatus::Failed => "failed",
        }
    }
}

/// Records CSV, header included.
pub fn records_csv(records: &[ReplicateRecord]) -> String {
    let mut out = String::from(RECORDS_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.kappa,
            r.replicate,
            r.seed,
            r.n1,
            r.n2,
            r.attempts,
            r.source,
            r.flood,
            r.flood1,
            r.flood2,
            r.normalized,
            r.unreachable,
            r.status.as_str(),
        ));
    }
    out
}

/// Summary CSV, header included.
pub fn summary_csv(summaries: &[KappaSummary]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for s in summaries {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            s.kappa, s.n_success, s.median_norm, s.mean_norm, s.q10, s.q90, s.limit, s.abs_gap,
        ));
    }
    out
}

/// Human-oriented rendering of a convergence report.
pub fn render_convergence(report: &ConvergenceReport) -> String {
    let mut out = String::from("kappa  n_success  median_norm  limit  abs_gap  std_err\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{}  {}  {:.6}  {:.6}  {:.6}  {:.6}\n",
            row.kappa, row.n_success, row.median_norm, row.limit, row.abs_gap, row.std_err
        ));
    }
    out.push_str(&format!(
        "trend: {} ({} inversion(s))\n",
        if report.trend_pass { "PASS" } else { "FAIL" },
        report.inversions
    ));
    out
}
