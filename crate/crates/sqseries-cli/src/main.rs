//! Command-line front end: evaluate any registered square series function,
//! compare the integral against its series oracle, sweep parameter grids to
//! CSV, print the special-constant table, benchmark integral vs series, or
//! run the deterministic self test.
//!
//! Exit codes: 0 ok, 1 selftest failure, 2 usage error, 3 region violation,
//! 4 no convergence.

mod output;
mod registry;

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqseries::quadrature::Method;
use sqseries::{Error, QuadratureConfig};

use output::OutputRow;
use registry::{FnEntry, ParamSet, RunError};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    JsonLines,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Hermite,
    TruncatedAdaptive,
}

/// Parameter slots shared by every function; all accept comma-separated
/// lists under `sweep`. Complex literals are "re" or "re+imi".
#[derive(Debug, Clone, Default, Args)]
struct ParamArgs {
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    i: Option<String>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    sign: Option<String>,
    #[arg(long)]
    r2: Option<String>,
    #[arg(long)]
    r1: Option<String>,
    #[arg(long)]
    r0: Option<String>,
    #[arg(long)]
    which: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    family: Option<String>,
}

impl ParamArgs {
    fn collect(&self) -> HashMap<&'static str, String> {
        let mut map = HashMap::new();
        let fields: [(&'static str, &Option<String>); 25] = [
            ("q", &self.q),
            ("c", &self.c),
            ("z", &self.z),
            ("a", &self.a),
            ("b", &self.b),
            ("d", &self.d),
            ("r", &self.r),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("m", &self.m),
            ("n", &self.n),
            ("k", &self.k),
            ("p", &self.p),
            ("i", &self.i),
            ("j", &self.j),
            ("u", &self.u),
            ("s", &self.s),
            ("x", &self.x),
            ("sign", &self.sign),
            ("r2", &self.r2),
            ("r1", &self.r1),
            ("r0", &self.r0),
            ("which", &self.which),
            ("kind", &self.kind),
            ("family", &self.family),
        ];
        for (name, value) in fields {
            if let Some(v) = value {
                map.insert(name, v.clone());
            }
        }
        map
    }
}

/// Quadrature overrides; flag values win over values from `--config`.
#[derive(Debug, Clone, Default, Args)]
struct QuadArgs {
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    truncation_t: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    refine_limit: Option<u32>,
    /// Evaluate outside a formula's stated convergence region; results are
    /// flagged non-converged.
    #[arg(long)]
    override_region: bool,
    /// Plain-text key = value file presetting the quadrature defaults.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "sqseries",
    about = "Square series generating functions: Gaussian-kernel integral representations vs direct-summation oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for rows (compare, sweep, bench).
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: FormatArg,
    /// Seed for the randomized property sampling in selftest.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function and print its EvalResult.
    Eval {
        #[arg(long = "fn")]
        function: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Evaluate the integral and the series oracle, print a comparison row.
    Compare {
        #[arg(long = "fn")]
        function: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Cartesian sweep over comma-separated parameter lists.
    Sweep {
        #[arg(long = "fn")]
        function: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Print the table of closed-form constants (phi, psi, Mellin transforms).
    Constants {
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Median-of-N timing of integral vs series evaluation.
    Bench {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, default_value_t = 11)]
        reps: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Run the deterministic invariant suite; exits nonzero on failure.
    Selftest {
        #[command(flatten)]
        quad: QuadArgs,
    },
}

fn parse_config_file(path: &PathBuf) -> Result<HashMap<String, String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{path:?}:{}: expected key = value", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn build_config(quad: &QuadArgs) -> Result<QuadratureConfig, String> {
    let mut cfg = QuadratureConfig::default();
    if let Some(path) = &quad.config {
        let file = parse_config_file(path)?;
        for (key, value) in &file {
            match key.as_str() {
                "method" => {
                    cfg.method = match value.as_str() {
                        "hermite" => Method::Hermite,
                        "truncated_adaptive" => Method::TruncatedAdaptive,
                        other => return Err(format!("unknown method {other:?} in config")),
                    }
                }
                "max_nodes" => cfg.max_nodes = value.parse().map_err(|e| format!("max_nodes: {e}"))?,
                "truncation_t" => {
                    cfg.truncation_t = value.parse().map_err(|e| format!("truncation_t: {e}"))?
                }
                "abs_tol" => cfg.abs_tol = value.parse().map_err(|e| format!("abs_tol: {e}"))?,
                "rel_tol" => cfg.rel_tol = value.parse().map_err(|e| format!("rel_tol: {e}"))?,
                "refine_limit" => {
                    cfg.refine_limit = value.parse().map_err(|e| format!("refine_limit: {e}"))?
                }
                other => return Err(format!("unknown config key {other:?}")),
            }
        }
    }
    if let Some(m) = quad.method {
        cfg.method = match m {
            MethodArg::Hermite => Method::Hermite,
            MethodArg::TruncatedAdaptive => Method::TruncatedAdaptive,
        };
    }
    if let Some(v) = quad.max_nodes {
        cfg.max_nodes = v;
    }
    if let Some(v) = quad.truncation_t {
        cfg.truncation_t = v;
    }
    if let Some(v) = quad.abs_tol {
        cfg.abs_tol = v;
    }
    if let Some(v) = quad.rel_tol {
        cfg.rel_tol = v;
    }
    if let Some(v) = quad.refine_limit {
        cfg.refine_limit = v;
    }
    cfg.region_override = quad.override_region;
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn exit_code_for(err: &RunError) -> u8 {
    match err {
        RunError::Usage(_) => 2,
        RunError::Eval(Error::RegionViolation(_)) => 3,
        RunError::Eval(Error::NoConvergence { .. }) => 4,
        RunError::Eval(_) => 2,
    }
}

fn fail(err: RunError) -> ExitCode {
    let code = exit_code_for(&err);
    match err {
        RunError::Usage(msg) => eprintln!("usage error: {msg}"),
        RunError::Eval(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code)
}

fn usage(msg: String) -> ExitCode {
    fail(RunError::Usage(msg))
}

fn find(function: &str) -> Result<&'static FnEntry, RunError> {
    registry::lookup(function).ok_or_else(|| {
        RunError::Usage(format!(
            "unknown function {function:?}; available: {}",
            registry::names().join(", ")
        ))
    })
}

/// Reject parameters the function does not declare, before any computation.
fn check_params(entry: &FnEntry, given: &HashMap<&'static str, String>) -> Result<(), RunError> {
    for name in given.keys() {
        if !entry.params.contains(name) {
            return Err(RunError::Usage(format!(
                "function {:?} does not take --{name} (takes: {})",
                entry.name,
                entry
                    .params
                    .iter()
                    .map(|p| format!("--{p}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            )));
        }
    }
    Ok(())
}

fn emit_rows(rows: &[OutputRow], format: FormatArg) {
    match format {
        FormatArg::Text => {
            for row in rows {
                println!("{}", output::to_text(row));
            }
        }
        FormatArg::Csv => print!("{}", output::to_csv(rows)),
        FormatArg::JsonLines => {
            for row in rows {
                println!("{}", output::to_json_line(row));
            }
        }
    }
}

fn run_compare_row(
    entry: &FnEntry,
    pset: &ParamSet,
    cfg: &QuadratureConfig,
    with_oracle: bool,
) -> Result<OutputRow, RunError> {
    let started = Instant::now();
    let result = (entry.integral)(pset, cfg)?;
    let elapsed_ns = started.elapsed().as_nanos();
    let oracle = if with_oracle {
        match entry.oracle {
            Some(f) => Some(f(pset)?),
            None => None,
        }
    } else {
        None
    };
    Ok(OutputRow::new(
        entry.name,
        pset.render(entry.params),
        result.value,
        oracle,
        result.nodes_used,
        elapsed_ns,
    ))
}

fn cmd_eval(function: &str, params: &ParamArgs, quad: &QuadArgs) -> ExitCode {
    let cfg = match build_config(quad) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let entry = match find(function) {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    let given = params.collect();
    if let Err(e) = check_params(entry, &given) {
        return fail(e);
    }
    let pset = ParamSet::new(given);
    match (entry.integral)(&pset, &cfg) {
        Ok(r) => {
            println!("{} [{}]", entry.name, pset.render(entry.params));
            println!("  value          = {:+.15e} {:+.15e}i", r.value.re, r.value.im);
            println!("  error_estimate = {:.3e}", r.error_estimate);
            println!("  nodes_used     = {}", r.nodes_used);
            println!("  converged      = {}", r.converged);
            if !r.warnings.is_empty() {
                println!("  warnings       = {}", r.warnings.join(", "));
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn cmd_compare(function: &str, params: &ParamArgs, quad: &QuadArgs, format: FormatArg) -> ExitCode {
    let cfg = match build_config(quad) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let entry = match find(function) {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    let given = params.collect();
    if let Err(e) = check_params(entry, &given) {
        return fail(e);
    }
    if entry.oracle.is_none() {
        return usage(format!("function {function:?} has no series oracle to compare against"));
    }
    let pset = ParamSet::new(given);
    match run_compare_row(entry, &pset, &cfg, true) {
        Ok(row) => {
            emit_rows(&[row], format);
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

/// Expand comma-separated parameter lists into the Cartesian grid, in
/// declared parameter order (deterministic row order).
fn expand_grid(
    entry: &FnEntry,
    given: &HashMap<&'static str, String>,
) -> Result<Vec<ParamSet>, RunError> {
    let mut grid: Vec<HashMap<&'static str, String>> = vec![HashMap::new()];
    for &name in entry.params {
        // Family-style entries leave some slots unused; anything genuinely
        // required still errors when the point is evaluated.
        let raw = match given.get(name) {
            Some(r) => r,
            None => continue,
        };
        let options: Vec<&str> = raw.split(',').map(str::trim).collect();
        let mut next = Vec::with_capacity(grid.len() * options.len());
        for base in &grid {
            for opt in &options {
                let mut point = base.clone();
                point.insert(name, opt.to_string());
                next.push(point);
            }
        }
        grid = next;
    }
    Ok(grid.into_iter().map(ParamSet::new).collect())
}

fn cmd_sweep(function: &str, params: &ParamArgs, quad: &QuadArgs, format: FormatArg) -> ExitCode {
    let cfg = match build_config(quad) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let entry = match find(function) {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    let given = params.collect();
    if let Err(e) = check_params(entry, &given) {
        return fail(e);
    }
    let grid = match expand_grid(entry, &given) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let mut rows = Vec::with_capacity(grid.len());
    for pset in &grid {
        match run_compare_row(entry, pset, &cfg, entry.oracle.is_some()) {
            Ok(row) => rows.push(row),
            Err(e) => return fail(e),
        }
    }
    emit_rows(&rows, format);
    ExitCode::SUCCESS
}

fn cmd_constants(quad: &QuadArgs) -> ExitCode {
    let cfg = match build_config(quad) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    match sqseries::special::constant_reports(&cfg) {
        Ok(reports) => {
            println!(
                "{:<24} {:>22} {:>22} {:>12} {:>12}  ok",
                "name", "computed", "reference", "abs_err", "rel_err"
            );
            for r in reports {
                println!(
                    "{:<24} {:>22.15} {:>22.15} {:>12.3e} {:>12.3e}  {}",
                    r.name, r.computed.re, r.reference.re, r.abs_err, r.rel_err, r.within_tol
                );
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(RunError::Eval(e)),
    }
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn cmd_bench(
    function: &str,
    reps: usize,
    params: &ParamArgs,
    quad: &QuadArgs,
    format: FormatArg,
) -> ExitCode {
    let cfg = match build_config(quad) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    if reps == 0 {
        return usage("--reps must be positive".into());
    }
    let entry = match find(function) {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    let given = params.collect();
    if let Err(e) = check_params(entry, &given) {
        return fail(e);
    }
    let pset = ParamSet::new(given);

    let mut integral_ns = Vec::with_capacity(reps);
    let mut result = None;
    for _ in 0..reps {
        let started = Instant::now();
        match (entry.integral)(&pset, &cfg) {
            Ok(r) => result = Some(r),
            Err(e) => return fail(e),
        }
        integral_ns.push(started.elapsed().as_nanos());
    }
    let result = result.expect("reps > 0");

    let oracle = match entry.oracle {
        Some(f) => {
            let mut oracle_ns = Vec::with_capacity(reps);
            let mut value = None;
            for _ in 0..reps {
                let started = Instant::now();
                match f(&pset) {
                    Ok(v) => value = Some(v),
                    Err(e) => return fail(e),
                }
                oracle_ns.push(started.elapsed().as_nanos());
            }
            Some((value.expect("reps > 0"), median(oracle_ns)))
        }
        None => None,
    };

    let med_integral = median(integral_ns);
    let row = OutputRow::new(
        entry.name,
        pset.render(entry.params),
        result.value,
        oracle.map(|(v, _)| v),
        result.nodes_used,
        med_integral,
    );
    emit_rows(&[row], format);
    println!("bench: integral median {med_integral} ns over {reps} reps");
    if let Some((_, med_oracle)) = oracle {
        println!("bench: series   median {med_oracle} ns over {reps} reps");
    }
    ExitCode::SUCCESS
}

fn cmd_selftest(seed: u64, quad: &QuadArgs) -> ExitCode {
    if let Err(e) = build_config(quad) {
        return usage(e);
    }
    let report = sqseries::selftest::run(seed);
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("[selftest] {status} {} ({})", check.name, check.detail);
    }
    println!(
        "[selftest] {} checks in {:.2?} (seed {seed})",
        report.checks.len(),
        report.elapsed
    );
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Rust ignores SIGPIPE at startup; restore the default so piping into
/// `head` terminates quietly instead of panicking on a closed stdout.
#[cfg(unix)]
fn reset_sigpipe() {
    extern "C" {
        fn signal(signum: i32, handler: usize) -> usize;
    }
    unsafe {
        signal(13, 0); // SIGPIPE -> SIG_DFL
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match &cli.command {
        Command::Eval {
            function,
            params,
            quad,
        } => cmd_eval(function, params, quad),
        Command::Compare {
            function,
            params,
            quad,
        } => cmd_compare(function, params, quad, cli.format),
        Command::Sweep {
            function,
            params,
            quad,
        } => cmd_sweep(function, params, quad, cli.format),
        Command::Constants { quad } => cmd_constants(quad),
        Command::Bench {
            function,
            reps,
            params,
            quad,
        } => cmd_bench(function, *reps, params, quad, cli.format),
        Command::Selftest { quad } => cmd_selftest(cli.seed, quad),
    }
}
