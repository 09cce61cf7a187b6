//! End-to-end subcommand tests against the built binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_floodnet"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("floodnet-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

const BIREGULAR_SPEC: &str = "d11: 3 3 3 3\nd12: 1 1 1 1\nd21: 1 1 1 1\nd22: 0 0 0 0\n";
const K4_SPEC: &str = "d11: 3 3 3 3\nd12: 0 0 0 0\nd21:\nd22:\n";

#[test]
fn validate_passes_on_biregular_spec() {
    let dir = tempdir("validate-ok");
    fs::write(dir.join("spec.txt"), BIREGULAR_SPEC).unwrap();
    let out = run(&["validate", "spec.txt"], &dir);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS bipartite balance"));
}

#[test]
fn validate_names_failing_balance_rule() {
    let dir = tempdir("validate-balance");
    fs::write(
        dir.join("spec.txt"),
        "d11: 3 3 3 3\nd12: 2 1 1 1\nd21: 1 1 1 1\nd22: 0 0 0 0\n",
    )
    .unwrap();
    let out = run(&["validate", "spec.txt"], &dir);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL bipartite balance"));
    assert!(stderr(&out).contains("bipartite balance"));
}

#[test]
fn validate_parse_error_reports_line() {
    let dir = tempdir("validate-parse");
    fs::write(dir.join("spec.txt"), "d11: 3 x 3\nd12: 1 1 1\nd21:\nd22:\n").unwrap();
    let out = run(&["validate", "spec.txt"], &dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn validate_json_is_machine_readable() {
    let dir = tempdir("validate-json");
    fs::write(dir.join("spec.txt"), K4_SPEC).unwrap();
    let out = run(&["validate", "spec.txt", "--json"], &dir);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["all_passed"], serde_json::Value::Bool(true));
    // d21 empty: the advisory minima hold vacuously.
    assert_eq!(parsed["theorem_regime_ok"], serde_json::Value::Bool(true));
}

#[test]
fn validate_theorem_regime_flag_tightens_exit() {
    let dir = tempdir("validate-regime");
    // min(d21) = 0 violates the regime minima but not the structural rules.
    fs::write(
        dir.join("spec.txt"),
        "d11: 3 3 3 3\nd12: 1 1 0 0\nd21: 1 1 0\nd22: 0 0 0\n",
    )
    .unwrap();
    let plain = run(&["validate", "spec.txt"], &dir);
    assert_eq!(plain.status.code(), Some(0), "{}", stderr(&plain));
    let strict = run(&["validate", "spec.txt", "--theorem-regime"], &dir);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn generate_k4_is_deterministic_and_complete() {
    let dir = tempdir("generate-k4");
    fs::write(dir.join("spec.txt"), K4_SPEC).unwrap();
    let a = run(&["generate", "spec.txt", "--seed", "7"], &dir);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let text = stdout(&a);
    let edges: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(edges.len(), 6, "K4 has 6 edges:\n{text}");
    assert!(text.starts_with("# n1=4 n2=0 seed=7 attempts="));
    let b = run(&["generate", "spec.txt", "--seed", "7"], &dir);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generate_saturates_on_unrealizable_spec() {
    let dir = tempdir("generate-saturate");
    fs::write(dir.join("spec.txt"), "d11: 2\nd12: 0\nd21:\nd22:\n").unwrap();
    let out = run(&["generate", "spec.txt", "--max-attempts", "25"], &dir);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("25 attempts"), "{}", stderr(&out));
}

#[test]
fn flood_star_example() {
    let dir = tempdir("flood-star");
    fs::write(
        dir.join("star.txt"),
        "# n1=1 n2=3 seed=0\n0 1 12 0.2\n0 2 12 0.5\n0 3 12 0.9\n",
    )
    .unwrap();
    let out = run(&["flood", "--graph", "star.txt", "--source", "0"], &dir);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("source,flood1,flood2,flood,unreachable_count"));
    assert!(text.contains("0,0,0.9,0.9,0"), "{text}");
}

#[test]
fn flood_uniform_source_is_deterministic() {
    let dir = tempdir("flood-uniform");
    fs::write(dir.join("spec.txt"), BIREGULAR_SPEC).unwrap();
    let a = run(&["flood", "--spec", "spec.txt", "--seed", "11"], &dir);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = run(&["flood", "--spec", "spec.txt", "--seed", "11"], &dir);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn flood_unweighted_graph_samples_with_seed() {
    let dir = tempdir("flood-unweighted");
    fs::write(
        dir.join("g.txt"),
        "# n1=3 n2=1 seed=0\n0 1 11\n1 2 11\n2 3 12\n",
    )
    .unwrap();
    let a = run(
        &["flood", "--graph", "g.txt", "--seed", "5", "--lambda12", "2.0"],
        &dir,
    );
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = run(
        &["flood", "--graph", "g.txt", "--seed", "5", "--lambda12", "2.0"],
        &dir,
    );
    assert_eq!(a.stdout, b.stdout);
    let c = run(
        &["flood", "--graph", "g.txt", "--seed", "6", "--lambda12", "2.0"],
        &dir,
    );
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn flood_passive_source_rejected() {
    let dir = tempdir("flood-passive");
    fs::write(
        dir.join("star.txt"),
        "# n1=1 n2=3 seed=0\n0 1 12 0.2\n0 2 12 0.5\n0 3 12 0.9\n",
    )
    .unwrap();
    let out = run(&["flood", "--graph", "star.txt", "--source", "2"], &dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("passive"));
}

#[test]
fn flood_unreachable_prints_inf_when_kept() {
    let dir = tempdir("flood-inf");
    // Node 2 is active but isolated.
    fs::write(dir.join("g.txt"), "# n1=3 n2=0 seed=0\n0 1 11 0.5\n").unwrap();
    let kept = run(
        &["flood", "--graph", "g.txt", "--source", "0", "--keep-unreachable"],
        &dir,
    );
    assert_eq!(kept.status.code(), Some(0), "{}", stderr(&kept));
    assert!(stdout(&kept).contains("inf"), "{}", stdout(&kept));
    let trimmed = run(&["flood", "--graph", "g.txt", "--source", "0"], &dir);
    assert!(!stdout(&trimmed).contains("inf"), "{}", stdout(&trimmed));
    assert!(stdout(&trimmed).lines().nth(1).unwrap().ends_with(",1"));
}

#[test]
fn flood_reach_curve_with_annotations() {
    let dir = tempdir("flood-curve");
    fs::write(dir.join("spec.txt"), BIREGULAR_SPEC).unwrap();
    let out = run(
        &[
            "flood",
            "--spec",
            "spec.txt",
            "--seed",
            "3",
            "--reach-curve",
            "curve.csv",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let curve = fs::read_to_string(dir.join("curve.csv")).unwrap();
    assert!(curve.contains("# alpha="), "{curve}");
    assert!(curve.contains("k,T(k)"), "{curve}");
}

const QUICK_PLAN: &str = "\
family = biregular
a = 3
c1 = 1
c2 = 1
kappa_grid = 100,300
replicates = 40
base_seed = 42
";

#[test]
fn experiment_writes_outputs_and_verdict() {
    let dir = tempdir("experiment-ok");
    fs::write(dir.join("plan.txt"), QUICK_PLAN).unwrap();
    let out = run(
        &["experiment", "--config", "plan.txt", "--out", "results", "--check"],
        &dir,
    );
    let text = stdout(&out);
    assert!(text.contains("trend:"), "{text}");
    let records = fs::read_to_string(dir.join("results/records.csv")).unwrap();
    assert!(records.starts_with(
        "kappa,replicate,seed,n1,n2,attempts,source,flood,flood1,flood2,normalized,unreachable,status"
    ));
    assert_eq!(records.lines().count(), 81); // header + 2*40 rows
    let summary = fs::read_to_string(dir.join("results/summary.csv")).unwrap();
    assert!(summary.starts_with("kappa,n_success,median_norm,mean_norm,q10,q90,limit,abs_gap"));
    // --check exit mirrors the printed verdict.
    let pass = text.contains("trend: PASS");
    assert_eq!(out.status.code(), Some(if pass { 0 } else { 1 }), "{text}");
}

#[test]
fn experiment_is_reproducible_across_thread_counts() {
    let dir = tempdir("experiment-repro");
    fs::write(dir.join("plan.txt"), QUICK_PLAN).unwrap();
    let a = run(
        &["experiment", "--config", "plan.txt", "--out", "r1", "--threads", "1"],
        &dir,
    );
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = run(
        &["experiment", "--config", "plan.txt", "--out", "r2", "--threads", "2"],
        &dir,
    );
    assert_eq!(b.status.code(), Some(0), "{}", stderr(&b));
    let r1 = fs::read(dir.join("r1/records.csv")).unwrap();
    let r2 = fs::read(dir.join("r2/records.csv")).unwrap();
    assert_eq!(r1, r2);
}

#[test]
fn experiment_missing_key_named() {
    let dir = tempdir("experiment-missing");
    fs::write(dir.join("plan.txt"), "family = biregular\na = 3\nc1 = 1\nc2 = 1\n").unwrap();
    let out = run(&["experiment", "--config", "plan.txt", "--out", "r"], &dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("kappa_grid"), "{}", stderr(&out));
}

#[test]
fn experiment_unknown_key_named() {
    let dir = tempdir("experiment-unknown");
    fs::write(dir.join("plan.txt"), format!("{QUICK_PLAN}turbo = yes\n")).unwrap();
    let out = run(&["experiment", "--config", "plan.txt", "--out", "r"], &dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("turbo"), "{}", stderr(&out));
}

#[test]
fn usage_error_exits_two() {
    let out = bin().arg("flood").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
