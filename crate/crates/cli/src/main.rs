//! Command-line driver.
//!
//! Four subcommands: `validate` (rule-by-rule degree spec report),
//! `generate` (simple-graph realization as an edge list), `flood`
//! (single-source first passage + flooding times), and `experiment`
//! (Monte Carlo grid run with CSV outputs and a convergence verdict).
//!
//! Exit codes: 0 success / verdict pass; 1 validation or verdict failure;
//! 2 usage or config error; 3 generation saturation. Seeds default to a
//! fixed constant, never the clock: identical invocations produce
//! byte-identical outputs.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use floodnet::degree::parse_degree_spec;
use floodnet::experiment::{
    parse_plan, records_csv, render_convergence, summary_csv, DEFAULT_BASE_SEED,
};
use floodnet::graph::{parse_edge_list, write_edge_list, EdgeListHeader};
use floodnet::{
    check_simple, compute_stats, convergence_report, flooding, generate_erased, generate_simple,
    run_experiment, sample_weights, scale_parameters, validate_spec, DegreeSpec, ExperimentError,
    FppResult, GenError, WeightedGraph,
};

/// Fixed default seed for all randomized subcommands.
const DEFAULT_SEED: u64 = DEFAULT_BASE_SEED;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SATURATED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "floodnet",
    version,
    about = "Two-type random graphs, walkable-path first passage, flooding-time experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a degree spec file against all validation rules.
    Validate(ValidateArgs),
    /// Realize a degree spec as a simple graph and dump the edge list.
    Generate(GenerateArgs),
    /// Run walkable-path flooding from one active source.
    Flood(FloodArgs),
    /// Run a Monte Carlo experiment plan over a kappa grid.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Degree spec file (d11:/d12:/d21:/d22: lines).
    spec: PathBuf,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Also require the minimum-degree rules (min d11 >= 3, min d21 >= 1).
    #[arg(long)]
    theorem_regime: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// Degree spec file.
    spec: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rejection-sampling cap before giving up.
    #[arg(long, default_value_t = 1000)]
    max_attempts: u32,
    /// Off-model fallback: match once, erase loops and parallel edges.
    #[arg(long)]
    erased: bool,
}

#[derive(Args)]
struct FloodArgs {
    /// Edge-list file (weighted or unweighted) to flood.
    #[arg(long, conflicts_with = "spec")]
    graph: Option<PathBuf>,
    /// Degree spec file to realize first (uses --seed).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Seed for generation / weights / source pick (one stream, that order).
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    lambda11: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda12: f64,
    /// Active source node id, or "uniform" for a seeded uniform draw.
    #[arg(long, default_value = "uniform")]
    source: String,
    /// Output path for the result row; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the reach-time curve T(k) to this path.
    #[arg(long)]
    reach_curve: Option<PathBuf>,
    /// Report inf floods when nodes are unreachable instead of the maxima
    /// over reachable nodes.
    #[arg(long)]
    keep_unreachable: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Plan file (key = value lines).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for records.csv and summary.csv.
    #[arg(long)]
    out: PathBuf,
    /// Exit nonzero unless the convergence trend verdict passes.
    #[arg(long)]
    check: bool,
    /// Rayon thread count (defaults to all cores). Output bytes do not
    /// depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

/// A terminating failure with its exit code; message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(msg: impl Display) -> Self {
        Self {
            code: EXIT_USAGE,
            message: msg.to_string(),
        }
    }

    fn validation(msg: impl Display) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: msg.to_string(),
        }
    }

    fn saturated(msg: impl Display) -> Self {
        Self {
            code: EXIT_SATURATED,
            message: msg.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(args) => cmd_validate(&args),
        Command::Generate(args) => cmd_generate(&args),
        Command::Flood(args) => cmd_flood(&args),
        Command::Experiment(args) => cmd_experiment(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: Option<&PathBuf>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_spec(path: &Path) -> Result<DegreeSpec, Failure> {
    let text = read_file(path)?;
    parse_degree_spec(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), Failure> {
    let spec = load_spec(&args.spec)?;
    let report = validate_spec(&spec).map_err(Failure::usage)?;

    if args.json {
        let json = serde_json::json!({
            "n1": spec.n1(),
            "n2": spec.n2(),
            "rules": report.rules,
            "all_passed": report.all_passed(),
            "theorem_regime_ok": report.theorem_regime_ok(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&json).expect("report serializes")
        );
    } else {
        println!("spec: n1={} n2={}", spec.n1(), spec.n2());
        for rule in &report.rules {
            println!(
                "{} {} — {}",
                if rule.passed { "PASS" } else { "FAIL" },
                rule.rule.name(),
                rule.detail
            );
        }
    }

    let ok = if args.theorem_regime {
        report.theorem_regime_ok()
    } else {
        report.all_passed()
    };
    if ok {
        Ok(())
    } else {
        Err(Failure::validation(format!(
            "validation failed: {}",
            report.failures(args.theorem_regime).join("; ")
        )))
    }
}

fn saturation_failure(e: GenError) -> Failure {
    match e {
        GenError::Saturated { attempts } => {
            Failure::saturated(format!("no simple graph after {attempts} attempts"))
        }
        other => Failure::usage(other),
    }
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), Failure> {
    let spec = load_spec(&args.spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let generated = if args.erased {
        generate_erased(&spec, &mut rng)
    } else {
        generate_simple(&spec, &mut rng, args.max_attempts)
    };
    let generated = generated.map_err(saturation_failure)?;
    let header = EdgeListHeader {
        n1: spec.n1(),
        n2: spec.n2(),
        seed: args.seed,
        attempts: generated.attempts,
    };
    write_output(
        args.out.as_ref(),
        &write_edge_list(&generated.graph, &header),
    )
}

/// Builds the weighted graph and source node for `flood`, consuming one
/// seeded stream in the documented order.
fn flood_input(args: &FloodArgs) -> Result<(WeightedGraph, usize), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    if args.lambda11 <= 0.0 || args.lambda12 <= 0.0 {
        return Err(Failure::usage("rates must be strictly positive"));
    }

    let wg = match (&args.graph, &args.spec) {
        (Some(path), None) => {
            let file = parse_edge_list(&read_file(path)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            if !check_simple(&file.graph).is_simple() {
                return Err(Failure::usage("input graph is not simple"));
            }
            match file.weights {
                Some(weights) => WeightedGraph::new(file.graph, weights)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
                None => sample_weights(file.graph, args.lambda11, args.lambda12, &mut rng),
            }
        }
        (None, Some(path)) => {
            let spec = load_spec(path)?;
            let generated =
                generate_simple(&spec, &mut rng, 1000).map_err(saturation_failure)?;
            sample_weights(generated.graph, args.lambda11, args.lambda12, &mut rng)
        }
        _ => {
            return Err(Failure::usage(
                "exactly one of --graph or --spec is required",
            ))
        }
    };

    let n1 = wg.graph().n1();
    if n1 == 0 {
        return Err(Failure::usage("graph has no active nodes"));
    }
    let source = if args.source == "uniform" {
        rng.random_range(0..n1)
    } else {
        let id: usize = args
            .source
            .parse()
            .map_err(|_| Failure::usage(format!("bad source '{}'", args.source)))?;
        if id >= wg.node_count() {
            return Err(Failure::usage(format!(
                "source {id} out of range for {} nodes",
                wg.node_count()
            )));
        }
        if !wg.graph().is_active(id) {
            return Err(Failure::usage(format!("source {id} is passive")));
        }
        id
    };
    Ok((wg, source))
}

fn cmd_flood(args: &FloodArgs) -> Result<(), Failure> {
    let (wg, source) = flood_input(args)?;
    let result = flooding(&wg, source, args.reach_curve.is_some()).map_err(Failure::usage)?;

    let mut row = String::from(FppResult::CSV_HEADER);
    row.push('\n');
    row.push_str(&result.csv_row(args.keep_unreachable));
    row.push('\n');
    write_output(args.out.as_ref(), &row)?;

    if let Some(curve_path) = &args.reach_curve {
        let curve = result
            .reach_curve_csv()
            .expect("curve requested and computed");
        let annotations = reach_annotations(&wg, &result);
        fs::write(curve_path, format!("{annotations}{curve}")).map_err(|e| {
            Failure::usage(format!("cannot write {}: {e}", curve_path.display()))
        })?;
    }
    Ok(())
}

/// Comment lines with the neighborhood growth scales and the reach times at
/// them, when the realized degrees support the computation.
fn reach_annotations(wg: &WeightedGraph, result: &FppResult) -> String {
    let spec = wg.graph().degree_spec();
    let Ok(stats) = compute_stats(&spec) else {
        return String::new();
    };
    let Ok(scales) = scale_parameters(wg.graph().n1(), &stats) else {
        return String::new();
    };
    let fmt = |t: Option<f64>| t.map_or_else(|| "NA".to_string(), |t| t.to_string());
    let t_alpha = result.reach_time(scales.alpha as usize);
    let t_beta = result.reach_time(scales.beta as usize);
    let spread = match (t_alpha, t_beta) {
        (Some(a), Some(b)) => Some(b - a),
        _ => None,
    };
    format!(
        "# alpha={} T_alpha={}\n# beta={} T_beta={}\n# T_alpha_beta={}\n",
        scales.alpha,
        fmt(t_alpha),
        scales.beta,
        fmt(t_beta),
        fmt(spread)
    )
}

fn cmd_experiment(args: &ExperimentArgs) -> Result<(), Failure> {
    let plan_text = read_file(&args.config)?;
    let plan = parse_plan(&plan_text)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.config.display())))?;

    fs::create_dir_all(&args.out)
        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", args.out.display())))?;

    let run = || run_experiment(&plan);
    let outcome = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::usage(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let outcome = outcome.map_err(|e| match e {
        ExperimentError::TooManyFailures {
            kappa,
            failed,
            replicates,
            table,
        } => {
            let mut msg = format!(
                "aborted at kappa={kappa}: {failed}/{replicates} replicates failed\nkappa  failed  replicates\n"
            );
            for (k, f, r) in table {
                msg.push_str(&format!("{k}  {f}  {r}\n"));
            }
            Failure::saturated(msg)
        }
        other => Failure::usage(other),
    })?;

    let records_path = args.out.join("records.csv");
    fs::write(&records_path, records_csv(&outcome.records))
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", records_path.display())))?;
    let summary_path = args.out.join("summary.csv");
    fs::write(&summary_path, summary_csv(&outcome.summaries))
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", summary_path.display())))?;

    println!(
        "wrote {} and {}",
        records_path.display(),
        summary_path.display()
    );
    for s in &outcome.summaries {
        if s.n_discarded > 0 || s.n_failed > 0 {
            println!(
                "kappa={}: {} discarded (unreachable), {} failed (saturated)",
                s.kappa, s.n_discarded, s.n_failed
            );
        }
    }

    match convergence_report(&outcome.records) {
        Ok(report) => {
            print!("{}", render_convergence(&report));
            if args.check && !report.trend_pass {
                return Err(Failure::validation("convergence trend verdict failed"));
            }
            Ok(())
        }
        Err(ExperimentError::InsufficientData(msg)) => {
            println!("no convergence verdict: {msg}");
            if args.check {
                return Err(Failure::usage(format!(
                    "--check requested but no verdict possible: {msg}"
                )));
            }
            Ok(())
        }
        Err(other) => Err(Failure::usage(other)),
    }
}
