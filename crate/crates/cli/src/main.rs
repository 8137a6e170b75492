use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mtc_core::category_data::{builtin_catalog, builtin_category, modular_datum};
use mtc_core::suite::{
    checked_tolerance, compute, parse_n_range, parse_suites, resolve_target, run_suite, tolerance_from_env,
    ComputeArgs, ComputeCommand, Suite, SuiteOptions, SuiteReport,
};
use mtc_core::{MtcError, Status, ToleranceConfig};

#[derive(Parser)]
#[command(name = "mtc", version, about = "Verify (pre)modular category constructions over the Deligne square")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in categories.
    List,
    /// Run verification suites on a built-in name or a category file.
    Check(CheckArgs),
    /// Print one invariant: xi, z, annulus, multifold or modular-data.
    Compute(ComputeCli),
}

#[derive(Args)]
struct CheckArgs {
    target: String,
    /// Inclusive level range, e.g. -2..2.
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    n_range: String,
    /// Absolute tolerance; overrides MTC_TOL.
    #[arg(long)]
    tol: Option<f64>,
    /// Emit the JSON report instead of the table.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated subset of suites.
    #[arg(long)]
    suite: Option<String>,
    /// Record wall times (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ComputeCli {
    command: String,
    target: String,
    /// Permutation in cycle notation for `z`, e.g. "(1 2 3)".
    #[arg(long)]
    perm: Option<String>,
    /// Number of tensor factors for `z`.
    #[arg(long)]
    arity: Option<usize>,
    #[arg(long)]
    i: Option<String>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    l: Option<String>,
    /// Tuple length for `multifold`.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    json: bool,
}

fn tolerance(flag: Option<f64>) -> Result<ToleranceConfig, MtcError> {
    match flag {
        Some(t) => checked_tolerance(t),
        None => tolerance_from_env(),
    }
}

fn list() {
    let tol = ToleranceConfig::default();
    println!("{:<18} {:>4}  {:>10}  {:<8}  labels", "name", "rank", "Dim", "modular");
    for name in builtin_catalog() {
        let spec = builtin_category(name).expect("catalog entries resolve");
        let md = modular_datum(&spec, &tol);
        println!(
            "{:<18} {:>4}  {:>10.6}  {:<8}  {}",
            name,
            spec.rank(),
            spec.global_dim(),
            md.is_modular,
            spec.labels.join(" ")
        );
    }
}

fn print_table(report: &SuiteReport) {
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mut line = format!("{status}  {:<48} dev {:.3e}  tol {:.1e}", c.name, c.max_deviation, c.tolerance);
        if let Some(t) = c.wall_time {
            line.push_str(&format!("  {t:.3}s"));
        }
        if let Some(n) = &c.note {
            line.push_str(&format!("  [{n}]"));
        }
        println!("{line}");
    }
    let s = report.summary;
    println!(
        "{}: {} checks, {} passed, {} failed, {} skipped",
        report.target, s.total, s.passed, s.failed, s.skipped
    );
    if let Some(f) = report.first_failure() {
        println!("first failure: {}", f.name);
    }
}

fn check(args: CheckArgs) -> Result<ExitCode, MtcError> {
    let options = SuiteOptions {
        n_range: parse_n_range(&args.n_range)?,
        tol: tolerance(args.tol)?,
        suites: match &args.suite {
            Some(s) => parse_suites(s)?,
            None => Suite::ALL.to_vec(),
        },
        seed: args.seed,
        timings: args.timings,
    };
    let spec = resolve_target(&args.target)?;
    let report = run_suite(&args.target, &spec, &options);
    if args.json {
        println!("{}", report.to_json());
    } else {
        print_table(&report);
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn compute_cmd(args: ComputeCli) -> Result<ExitCode, MtcError> {
    let command: ComputeCommand = args.command.parse()?;
    let spec = resolve_target(&args.target)?;
    let tol = tolerance(args.tol)?;
    let cargs = ComputeArgs {
        perm: args.perm,
        arity: args.arity,
        i: args.i,
        j: args.j,
        k: args.k,
        l: args.l,
        m: args.m,
    };
    let out = compute(command, &spec, &cargs, &tol).map_err(|e| match e {
        MtcError::InvalidOption(m) => MtcError::InvalidOption(format!("{} {}: {m}", args.command, args.target)),
        other => other,
    })?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON value serializes"));
    } else {
        print!("{}", out.text);
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List => {
            list();
            Ok(ExitCode::SUCCESS)
        }
        Command::Check(args) => check(args),
        Command::Compute(args) => compute_cmd(args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
