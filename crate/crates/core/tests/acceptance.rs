//! End-to-end verification gates.
//!
//! One test per criterion, each printing a `criterion N PASS` line (run with
//! `cargo test --test acceptance -- --nocapture` to see them):
//!
//! 1. label-setting search vs exhaustive path oracle on random graphs;
//! 2. Erdős–Gallai / Gale–Ryser vs exhaustive realization search;
//! 3. metric properties of tau restricted to active nodes;
//! 4. invariance of tau under deletion of passive-passive edges;
//! 5. chi-square uniformity of the half-edge matching;
//! 6. convergence of median normalized flooding to the two-type limit;
//! 7. classical single-type reduction;
//! 8. ordering of medians under cross-edge rate changes;
//! 9. byte-identical experiment output across thread counts.

use std::collections::HashSet;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use floodnet::degree::graphical::{erdos_gallai, gale_ryser};
use floodnet::experiment::records_csv;
use floodnet::{
    brute_force_fpp, convergence_report, match_halfedges, run_experiment, sample_weights,
    walkable_fpp, DegreeSpec, EdgeType, ExperimentPlan, Family, TypedMultigraph, WeightedGraph,
};

/// Random typed weighted graph: `n` in `2..=max_n`, at least one active
/// node, independent edges, Exp(1)/Exp(1) weights.
fn random_instance(seed: u64, max_n: usize, edge_prob: f64) -> (WeightedGraph, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: usize = rng.random_range(2..=max_n);
    let n1: usize = rng.random_range(1..=n);
    let n2 = n - n1;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < edge_prob {
                let kind = match (u < n1, v < n1) {
                    (true, true) => EdgeType::ActiveActive,
                    (false, false) => EdgeType::PassivePassive,
                    _ => EdgeType::ActivePassive,
                };
                edges.push((u, v, kind));
            }
        }
    }
    let graph = TypedMultigraph::from_edges(n1, n2, edges).unwrap();
    let wg = sample_weights(graph, 1.0, 1.0, &mut rng);
    let source = rng.random_range(0..n1);
    (wg, source)
}

fn theorem_plan(base_seed: u64) -> ExperimentPlan {
    ExperimentPlan {
        family: Family::Biregular {
            active_degree: 3,
            cross_active: 1,
            cross_passive: 1,
            passive_degree: 0,
        },
        kappa_grid: vec![1000, 3000, 10000, 30000],
        replicates: 200,
        lambda11: 1.0,
        lambda12: 1.0,
        base_seed,
        discard_unreachable: true,
        max_attempts: 1000,
        erased: false,
    }
}

#[test]
fn criterion_01_walkable_fpp_matches_oracle() {
    let started = Instant::now();
    let instances = 1000;
    for seed in 0..instances {
        let (wg, source) = random_instance(seed, 8, 0.45);
        let oracle = brute_force_fpp(&wg, source).unwrap();
        let fast = walkable_fpp(&wg, source).unwrap();
        for (node, (a, b)) in oracle.tau.iter().zip(&fast.tau).enumerate() {
            if a.is_infinite() || b.is_infinite() {
                assert!(
                    a.is_infinite() && b.is_infinite(),
                    "seed {seed} node {node}: {a} vs {b}"
                );
            } else {
                assert!(
                    (a - b).abs() <= 1e-9,
                    "seed {seed} node {node}: {a} vs {b}"
                );
            }
        }
        assert_eq!(oracle.unreachable_count, fast.unreachable_count, "seed {seed}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60s");
    println!(
        "criterion 1 PASS: search == oracle on {instances} random graphs (n <= 8), \
         max |dtau| <= 1e-9, {elapsed:?}"
    );
}

/// Sorted degree multisets realizable by a simple graph on `n` labeled
/// nodes, by enumerating all 2^(n(n-1)/2) graphs.
fn realizable_simple(n: usize) -> HashSet<Vec<u32>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut set = HashSet::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let mut deg = vec![0u32; n];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
        deg.sort_unstable();
        set.insert(deg);
    }
    set
}

/// Sorted (rows, cols) margin pairs realizable by a 0/1 matrix of the given
/// shape, by enumerating all 2^(n1*n2) matrices.
fn realizable_bipartite(n1: usize, n2: usize) -> HashSet<(Vec<u32>, Vec<u32>)> {
    let cells = n1 * n2;
    let mut set = HashSet::new();
    for mask in 0u32..(1u32 << cells) {
        let mut rows = vec![0u32; n1];
        let mut cols = vec![0u32; n2];
        for bit in 0..cells {
            if mask & (1 << bit) != 0 {
                rows[bit / n2] += 1;
                cols[bit % n2] += 1;
            }
        }
        rows.sort_unstable_by(|a, b| b.cmp(a));
        cols.sort_unstable_by(|a, b| b.cmp(a));
        set.insert((rows, cols));
    }
    set
}

/// All length-`len` tuples over `0..=max`, as a base-(max+1) counter.
fn all_sequences(len: usize, max: u32) -> impl Iterator<Item = Vec<u32>> {
    let radix = u64::from(max) + 1;
    let total = radix.pow(len as u32);
    (0..total).map(move |mut code| {
        (0..len)
            .map(|_| {
                let digit = (code % radix) as u32;
                code /= radix;
                digit
            })
            .collect()
    })
}

#[test]
fn criterion_02_graphicality_oracles() {
    let started = Instant::now();

    let mut eg_checked = 0u64;
    for n in 0..=6usize {
        let realizable = realizable_simple(n);
        for seq in all_sequences(n, 4) {
            let verdict = erdos_gallai(&seq).is_ok();
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            let truth = realizable.contains(&sorted);
            assert_eq!(verdict, truth, "Erdos-Gallai disagrees on {seq:?}");
            eg_checked += 1;
        }
    }

    let mut gr_checked = 0u64;
    for n1 in 0..=4usize {
        for n2 in 0..=4usize {
            let realizable = realizable_bipartite(n1, n2);
            for rows in all_sequences(n1, 3) {
                for cols in all_sequences(n2, 3) {
                    let verdict = gale_ryser(&rows, &cols).is_ok();
                    let mut rs = rows.clone();
                    let mut cs = cols.clone();
                    rs.sort_unstable_by(|a, b| b.cmp(a));
                    cs.sort_unstable_by(|a, b| b.cmp(a));
                    let truth = realizable.contains(&(rs, cs));
                    assert_eq!(verdict, truth, "Gale-Ryser disagrees on {rows:?} / {cols:?}");
                    gr_checked += 1;
                }
            }
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}, budget 120s");
    println!(
        "criterion 2 PASS: {eg_checked} Erdos-Gallai and {gr_checked} Gale-Ryser verdicts \
         match exhaustive search, {elapsed:?}"
    );
}

#[test]
fn criterion_03_tau_is_a_metric_on_active_nodes() {
    let started = Instant::now();
    let tol = 1e-9;
    for seed in 0..200u64 {
        let (wg, _) = random_instance(5000 + seed, 50, 0.12);
        let n1 = wg.graph().n1();
        let taus: Vec<Vec<f64>> = (0..n1)
            .map(|a| walkable_fpp(&wg, a).unwrap().tau)
            .collect();
        // All three endpoints range over active nodes only: the tau rows
        // exist for active sources, and the metric claim is about V1.
        for (a, row) in taus.iter().enumerate() {
            assert_eq!(row[a], 0.0, "seed {seed}: tau({a},{a}) != 0");
            for (b, ab) in row[..n1].iter().copied().enumerate() {
                let ba = taus[b][a];
                if ab.is_infinite() || ba.is_infinite() {
                    assert!(ab.is_infinite() && ba.is_infinite(), "seed {seed} ({a},{b})");
                } else {
                    assert!((ab - ba).abs() <= tol, "seed {seed} ({a},{b}): {ab} vs {ba}");
                }
            }
        }
        for (a, row) in taus.iter().enumerate() {
            for (c, ac) in row[..n1].iter().copied().enumerate() {
                if ac.is_infinite() {
                    continue; // a->c->b gives no finite bound
                }
                for (b, cb) in taus[c][..n1].iter().copied().enumerate() {
                    if cb.is_infinite() {
                        continue;
                    }
                    assert!(
                        row[b] <= ac + cb + tol,
                        "seed {seed}: tau({a},{b}) = {} > {} + {}",
                        row[b],
                        ac,
                        cb
                    );
                }
            }
        }
    }
    let elapsed = started.elapsed();
    println!(
        "criterion 3 PASS: symmetry, triangle inequality, tau(a,a)=0 on 200 instances \
         (n <= 50, tol 1e-9), {elapsed:?}"
    );
}

#[test]
fn criterion_04_passive_passive_edges_are_irrelevant() {
    let started = Instant::now();
    let mut with_22 = 0usize;
    for seed in 0..100u64 {
        // Dense enough that passive-passive edges actually occur.
        let (wg, _) = random_instance(9000 + seed, 12, 0.5);
        if wg
            .graph()
            .edges()
            .iter()
            .any(|e| e.kind == EdgeType::PassivePassive)
        {
            with_22 += 1;
        }
        let stripped = wg.without_passive_edges();
        for a in 0..wg.graph().n1() {
            let full = walkable_fpp(&wg, a).unwrap().tau;
            let cut = walkable_fpp(&stripped, a).unwrap().tau;
            assert_eq!(full, cut, "seed {seed} source {a}");
        }
    }
    assert!(with_22 > 20, "only {with_22} instances had type-22 edges");
    let elapsed = started.elapsed();
    println!(
        "criterion 4 PASS: deleting type-22 edges left every tau exactly unchanged on \
         100 instances ({with_22} with such edges), {elapsed:?}"
    );
}

#[test]
fn criterion_05_matching_uniformity_chi_square() {
    let started = Instant::now();
    // Four degree-1 stubs: three perfect matchings, classified by node 0's
    // partner (1, 2, or 3).
    let spec = DegreeSpec::new(vec![1, 1, 1, 1], vec![0; 4], vec![], vec![]);
    let trials = 100_000u64;
    let mut counts = [0u64; 3];
    for seed in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = match_halfedges(&spec, &mut rng).unwrap();
        let partner = g
            .edges()
            .iter()
            .find_map(|e| match (e.u, e.v) {
                (0, v) => Some(v),
                _ => None,
            })
            .unwrap();
        counts[partner - 1] += 1;
    }
    let expected = trials as f64 / 3.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    // Upper 0.01 quantile of chi-square with 2 degrees of freedom.
    let threshold = 9.21034037197618;
    assert!(chi2 <= threshold, "chi2 = {chi2:.4} > {threshold}");
    let elapsed = started.elapsed();
    println!(
        "criterion 5 PASS: matching frequencies {counts:?} over {trials} seeds, \
         chi2 = {chi2:.3} <= {threshold} (df=2, alpha=0.01), {elapsed:?}"
    );
}

#[test]
fn criterion_06_theorem_convergence_biregular() {
    let started = Instant::now();
    let plan = theorem_plan(20260806);
    let outcome = run_experiment(&plan).unwrap();
    let report = convergence_report(&outcome.records).unwrap();

    for row in &report.rows {
        assert!(
            (row.limit - 2.0).abs() < 1e-12,
            "kappa={} limit {}",
            row.kappa,
            row.limit
        );
        assert!(row.n_success >= 190, "kappa={}: {}", row.kappa, row.n_success);
    }
    let gaps: Vec<f64> = report.rows.iter().map(|r| r.abs_gap).collect();
    assert!(
        report.inversions <= 1,
        "gaps {gaps:?} have {} inversions",
        report.inversions
    );
    let final_gap = *gaps.last().unwrap();
    assert!(final_gap <= 0.35, "final gap {final_gap} > 0.35");
    let elapsed = started.elapsed();
    println!(
        "criterion 6 PASS: |median(Flood/ln kappa) - 2.0| = {gaps:?} \
         ({} inversion(s), final {final_gap:.4} <= 0.35), {elapsed:?}"
    , report.inversions);
}

#[test]
fn criterion_07_classical_reduction() {
    let started = Instant::now();
    let plan = ExperimentPlan {
        family: Family::Biregular {
            active_degree: 3,
            cross_active: 0,
            cross_passive: 0,
            passive_degree: 0,
        },
        ..theorem_plan(20260807)
    };
    let outcome = run_experiment(&plan).unwrap();
    let report = convergence_report(&outcome.records).unwrap();

    let expected = 1.0 + 1.0 / 3.0;
    for row in &report.rows {
        assert!(
            (row.limit - expected).abs() < 1e-12,
            "kappa={} limit {}",
            row.kappa,
            row.limit
        );
    }
    let gaps: Vec<f64> = report.rows.iter().map(|r| r.abs_gap).collect();
    assert!(
        report.inversions <= 1,
        "gaps {gaps:?} have {} inversions",
        report.inversions
    );
    let final_gap = *gaps.last().unwrap();
    assert!(final_gap <= 0.35, "final gap {final_gap} > 0.35");
    let elapsed = started.elapsed();
    println!(
        "criterion 7 PASS: single-type medians approach 4/3, gaps {gaps:?} \
         ({} inversion(s), final {final_gap:.4}), {elapsed:?}",
        report.inversions
    );
}

#[test]
fn criterion_08_rate_sensitivity_ordering() {
    let started = Instant::now();
    let mut medians = Vec::new();
    let mut limits = Vec::new();
    for (i, lambda12) in [0.5, 1.0, 2.0].into_iter().enumerate() {
        let plan = ExperimentPlan {
            kappa_grid: vec![10_000],
            lambda12,
            ..theorem_plan(20260808 + i as u64)
        };
        let outcome = run_experiment(&plan).unwrap();
        let summary = &outcome.summaries[0];
        assert!(summary.n_success >= 190);
        medians.push(summary.median_norm);
        limits.push(summary.limit);
    }
    // Limits 1/(nu-1) + 1/min(3, lambda12): 3.0, 2.0, 1.5.
    assert!((limits[0] - 3.0).abs() < 1e-12);
    assert!((limits[1] - 2.0).abs() < 1e-12);
    assert!((limits[2] - 1.5).abs() < 1e-12);
    assert!(
        medians[0] > medians[1] && medians[1] > medians[2],
        "medians {medians:?} not strictly decreasing in lambda12"
    );
    let elapsed = started.elapsed();
    println!(
        "criterion 8 PASS: medians {medians:?} order with limits {limits:?} \
         (strictly decreasing in lambda12), {elapsed:?}"
    );
}

#[test]
fn criterion_09_thread_count_determinism() {
    let started = Instant::now();
    let plan = ExperimentPlan {
        family: Family::Biregular {
            active_degree: 3,
            cross_active: 1,
            cross_passive: 1,
            passive_degree: 0,
        },
        kappa_grid: vec![200, 500],
        replicates: 60,
        lambda11: 1.0,
        lambda12: 1.0,
        base_seed: 20260809,
        discard_unreachable: true,
        max_attempts: 1000,
        erased: false,
    };
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_experiment(&plan).unwrap());
    let multi = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| run_experiment(&plan).unwrap());
    let csv1 = records_csv(&single.records);
    let csv4 = records_csv(&multi.records);
    assert_eq!(csv1, csv4, "records differ between 1 and 4 threads");
    let elapsed = started.elapsed();
    println!(
        "criterion 9 PASS: {} record bytes identical across thread counts, {elapsed:?}",
        csv1.len()
    );
}
