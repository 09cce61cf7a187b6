//! Seeded Monte Carlo replication across a kappa grid.
//!
//! Each `(kappa, replicate)` cell derives its own seed (see [`child_seed`])
//! and runs an isolated pipeline on one ChaCha8 stream, consumed in a fixed
//! order: family synthesis, half-edge matching (with simplicity rejection),
//! weight sampling, then the uniform active source draw. Replicates within a
//! kappa run in parallel on the current rayon pool; records are collected in
//! replicate order, so the output is identical for any thread count.

mod csv;
mod plan;
mod seed;

pub use csv::{records_csv, render_convergence, summary_csv, RECORDS_HEADER, SUMMARY_HEADER};
pub use plan::{parse_plan, write_plan, DEFAULT_BASE_SEED, DEFAULT_MAX_ATTEMPTS};
pub use seed::{child_seed, splitmix64};

use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::degree::{compute_stats, make_family, theoretical_limit, Family};
use crate::error::{ExperimentError, GenError};
use crate::fpp::{flooding, sample_weights};
use crate::graph::{generate_erased, generate_simple, Generated};

/// A full experiment description. See [`parse_plan`] for the file format.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub family: Family,
    /// Strictly increasing graph scales.
    pub kappa_grid: Vec<u64>,
    pub replicates: u32,
    pub lambda11: f64,
    pub lambda12: f64,
    pub base_seed: u64,
    /// Drop replicates whose graph leaves some node unreachable (default).
    /// When false such replicates stay in the summaries with infinite floods.
    pub discard_unreachable: bool,
    pub max_attempts: u32,
    /// Off-model erased fallback instead of rejection sampling.
    pub erased: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplicateStatus {
    Success,
    /// Computed but excluded from summaries by the discard policy.
    Discarded,
    /// Graph generation saturated; no flooding was computed.
    Failed,
}

/// Outcome of one `(kappa, replicate)` cell.
#[derive(Debug, Clone)]
pub struct ReplicateRecord {
    pub kappa: u64,
    pub replicate: u32,
    pub seed: u64,
    pub n1: usize,
    pub n2: usize,
    pub attempts: u32,
    pub source: usize,
    pub flood: f64,
    pub flood1: f64,
    pub flood2: f64,
    /// flood / ln(kappa).
    pub normalized: f64,
    pub unreachable: usize,
    pub status: ReplicateStatus,
    /// Asymptotic limit evaluated on this replicate's realized spec.
    pub limit: f64,
    /// Kept in memory for profiling; never serialized (CSV output must be
    /// byte-identical across runs).
    pub wall_time: Duration,
}

/// Aggregates over the successful replicates of one kappa.
#[derive(Debug, Clone)]
pub struct KappaSummary {
    pub kappa: u64,
    pub n_success: u32,
    /// Replicates excluded by the unreachable-discard policy.
    pub n_discarded: u32,
    /// Replicates whose generation saturated.
    pub n_failed: u32,
    pub median_norm: f64,
    pub mean_norm: f64,
    pub q10: f64,
    pub q90: f64,
    /// Mean of the per-replicate limits (constant across replicates for
    /// deterministic families).
    pub limit: f64,
    /// |median_norm - limit|.
    pub abs_gap: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub records: Vec<ReplicateRecord>,
    pub summaries: Vec<KappaSummary>,
}

/// Runs the whole plan. Saturated replicates are recorded as failed and the
/// run continues, unless more than half the replicates at some kappa fail —
/// then the experiment aborts with per-kappa diagnostics. Family or rate
/// errors abort immediately: they invalidate every replicate.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentOutcome, ExperimentError> {
    validate_plan(plan)?;

    let mut records = Vec::with_capacity(plan.kappa_grid.len() * plan.replicates as usize);
    let mut summaries = Vec::with_capacity(plan.kappa_grid.len());
    let mut failure_table: Vec<(u64, u32, u32)> = Vec::new();

    for &kappa in &plan.kappa_grid {
        let kappa_records: Result<Vec<ReplicateRecord>, ExperimentError> = (0..plan.replicates)
            .into_par_iter()
            .map(|rep| run_replicate(plan, kappa, rep))
            .collect();
        let kappa_records = kappa_records?;

        let failed = kappa_records
            .iter()
            .filter(|r| r.status == ReplicateStatus::Failed)
            .count() as u32;
        failure_table.push((kappa, failed, plan.replicates));
        if u64::from(failed) * 2 > u64::from(plan.replicates) {
            return Err(ExperimentError::TooManyFailures {
                kappa,
                failed,
                replicates: plan.replicates,
                table: failure_table,
            });
        }

        summaries.push(summarize(kappa, &kappa_records));
        records.extend(kappa_records);
    }

    Ok(ExperimentOutcome { records, summaries })
}

fn validate_plan(plan: &ExperimentPlan) -> Result<(), ExperimentError> {
    if plan.kappa_grid.is_empty() {
        return Err(ExperimentError::Plan("kappa_grid is empty".into()));
    }
    if !plan.kappa_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(ExperimentError::Plan(
            "kappa_grid must be strictly increasing".into(),
        ));
    }
    if plan.replicates == 0 {
        return Err(ExperimentError::Plan("replicates must be >= 1".into()));
    }
    if !(plan.lambda11 > 0.0 && plan.lambda12 > 0.0) {
        return Err(ExperimentError::Plan(
            "rates must be strictly positive".into(),
        ));
    }
    Ok(())
}

fn run_replicate(
    plan: &ExperimentPlan,
    kappa: u64,
    replicate: u32,
) -> Result<ReplicateRecord, ExperimentError> {
    let seed = child_seed(plan.base_seed, kappa, u64::from(replicate));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let started = Instant::now();

    let spec = make_family(&plan.family, kappa, &mut rng)?;
    let stats = compute_stats(&spec)?;
    let limit = theoretical_limit(&stats, plan.lambda11, plan.lambda12)?;
    let (n1, n2) = (spec.n1(), spec.n2());

    let generated = if plan.erased {
        generate_erased(&spec, &mut rng)
    } else {
        generate_simple(&spec, &mut rng, plan.max_attempts)
    };
    let Generated { graph, attempts } = match generated {
        Ok(g) => g,
        Err(GenError::Saturated { attempts }) => {
            return Ok(ReplicateRecord {
                kappa,
                replicate,
                seed,
                n1,
                n2,
                attempts,
                source: 0,
                flood: f64::NAN,
                flood1: f64::NAN,
                flood2: f64::NAN,
                normalized: f64::NAN,
                unreachable: 0,
                status: ReplicateStatus::Failed,
                limit,
                wall_time: started.elapsed(),
            })
        }
        Err(e) => return Err(e.into()),
    };

    let wg = sample_weights(graph, plan.lambda11, plan.lambda12, &mut rng);
    let source = rng.random_range(0..n1);
    let res = flooding(&wg, source, false)?;

    let status = if res.unreachable_count > 0 && plan.discard_unreachable {
        ReplicateStatus::Discarded
    } else {
        ReplicateStatus::Success
    };
    let flood = res.flood;
    Ok(ReplicateRecord {
        kappa,
        replicate,
        seed,
        n1,
        n2,
        attempts,
        source,
        flood,
        flood1: res.flood1,
        flood2: res.flood2,
        normalized: flood / (kappa as f64).ln(),
        unreachable: res.unreachable_count,
        status,
        limit,
        wall_time: started.elapsed(),
    })
}

fn summarize(kappa: u64, records: &[ReplicateRecord]) -> KappaSummary {
    let count = |s: ReplicateStatus| records.iter().filter(|r| r.status == s).count() as u32;
    let successes: Vec<&ReplicateRecord> = records
        .iter()
        .filter(|r| r.status == ReplicateStatus::Success)
        .collect();
    let mut norms: Vec<f64> = successes.iter().map(|r| r.normalized).collect();
    norms.sort_unstable_by(f64::total_cmp);
    let n = norms.len();
    let (median_norm, mean_norm, q10, q90) = if n == 0 {
        (f64::NAN, f64::NAN, f64::NAN, f64::NAN)
    } else {
        (
            quantile(&norms, 0.5),
            norms.iter().sum::<f64>() / n as f64,
            quantile(&norms, 0.1),
            quantile(&norms, 0.9),
        )
    };
    let limit = if successes.is_empty() {
        f64::NAN
    } else {
        successes.iter().map(|r| r.limit).sum::<f64>() / successes.len() as f64
    };
    KappaSummary {
        kappa,
        n_success: n as u32,
        n_discarded: count(ReplicateStatus::Discarded),
        n_failed: count(ReplicateStatus::Failed),
        median_norm,
        mean_norm,
        q10,
        q90,
        limit,
        abs_gap: (median_norm - limit).abs(),
    }
}

/// Linearly interpolated empirical quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// One row of a convergence report.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub kappa: u64,
    pub n_success: u32,
    pub median_norm: f64,
    pub limit: f64,
    pub abs_gap: f64,
    /// Standard error of the normalized flood over successes.
    pub std_err: f64,
}

/// Distance-to-limit trend across the kappa grid.
///
/// The verdict passes when |median normalized - limit| does not increase
/// from each kappa to the next, allowing at most one inversion — the limit
/// is asymptotic, so finite-size noise is tolerated but a growing gap is not.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub inversions: usize,
    pub trend_pass: bool,
}

/// Minimum successful replicates per kappa before a verdict is attempted.
pub const MIN_SUCCESS_PER_KAPPA: u32 = 30;

/// Builds a [`ConvergenceReport`] from replicate records.
///
/// Refuses (rather than guesses) when fewer than two kappa values are
/// present or any kappa has fewer than [`MIN_SUCCESS_PER_KAPPA`] successes.
pub fn convergence_report(
    records: &[ReplicateRecord],
) -> Result<ConvergenceReport, ExperimentError> {
    let mut kappas: Vec<u64> = records.iter().map(|r| r.kappa).collect();
    kappas.sort_unstable();
    kappas.dedup();
    if kappas.len() < 2 {
        return Err(ExperimentError::InsufficientData(format!(
            "{} kappa value(s); need at least 2",
            kappas.len()
        )));
    }

    let mut rows = Vec::with_capacity(kappas.len());
    for &kappa in &kappas {
        let group: Vec<&ReplicateRecord> = records
            .iter()
            .filter(|r| r.kappa == kappa && r.status == ReplicateStatus::Success)
            .collect();
        let n = group.len() as u32;
        if n < MIN_SUCCESS_PER_KAPPA {
            return Err(ExperimentError::InsufficientData(format!(
                "kappa={kappa} has {n} successful replicates; need >= {MIN_SUCCESS_PER_KAPPA}"
            )));
        }
        let mut norms: Vec<f64> = group.iter().map(|r| r.normalized).collect();
        norms.sort_unstable_by(f64::total_cmp);
        let median_norm = quantile(&norms, 0.5);
        let mean = norms.iter().sum::<f64>() / norms.len() as f64;
        let var = norms.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
            / (norms.len() - 1) as f64;
        let std_err = (var / norms.len() as f64).sqrt();
        let limit = group.iter().map(|r| r.limit).sum::<f64>() / group.len() as f64;
        rows.push(ConvergenceRow {
            kappa,
            n_success: n,
            median_norm,
            limit,
            abs_gap: (median_norm - limit).abs(),
            std_err,
        });
    }

    let inversions = rows
        .windows(2)
        .filter(|w| w[1].abs_gap > w[0].abs_gap)
        .count();
    Ok(ConvergenceReport {
        rows,
        inversions,
        trend_pass: inversions <= 1,
    })
}
