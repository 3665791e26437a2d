//! Command-line front ends, kept in the library so they can be driven with
//! in-memory streams.

use std::ffi::OsString;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;
use std::sync::atomic::AtomicBool;
use std::time::Duration;

use clap::error::ErrorKind;
use clap::Parser;

use crate::oracle::is_valid_dfvs;
use crate::pace::{parse_instance_with_warnings, run_benchmark, write_solution};
use crate::solver::{solve, SolverConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
pub struct SolverArgs {
    /// Seed for the local-search random stream.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 600.0)]
    pub time_limit: f64,
    /// Run exactly this many local-search iterations, ignoring the time limit.
    #[arg(long)]
    pub iterations: Option<u64>,
    #[arg(long, default_value_t = 0.10)]
    pub trigger_fraction: f64,
    #[arg(long, default_value_t = 0.30)]
    pub restore_fraction: f64,
    /// Maximum degree for the bounded reduction rules.
    #[arg(long, default_value_t = 12)]
    pub degree_bound: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, String> {
        let time_limit = match self.iterations {
            Some(_) => None,
            None if self.time_limit.is_finite() && self.time_limit >= 0.0 => {
                Some(Duration::from_secs_f64(self.time_limit))
            }
            None => return Err(format!("invalid time limit {}", self.time_limit)),
        };
        let config = SolverConfig {
            seed: self.seed,
            time_limit,
            max_iterations: self.iterations,
            trigger_fraction: self.trigger_fraction,
            restore_fraction: self.restore_fraction,
            degree_bound: self.degree_bound,
            ..SolverConfig::default()
        };
        config.validate().map_err(|e| e.to_string())?;
        Ok(config)
    }
}

/// Heuristic minimum directed feedback vertex set solver (PACE 2022 format).
#[derive(Parser, Debug)]
#[command(name = "dfvs", version)]
pub struct SolveCli {
    /// Instance file; standard input when omitted.
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Check the solution before printing it; exit 2 if it is not valid.
    #[arg(long)]
    pub validate: bool,
}

/// Solves every instance file in a directory and writes a tab-separated report.
#[derive(Parser, Debug)]
#[command(name = "dfvs-bench", version)]
pub struct BenchCli {
    pub directory: PathBuf,
    /// Report destination; standard output when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

fn parse_args<P: Parser>(
    args: Vec<OsString>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<P, i32> {
    P::try_parse_from(args).map_err(|e| match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = write!(out, "{e}");
            EXIT_OK
        }
        _ => {
            let _ = write!(err, "{e}");
            EXIT_USAGE
        }
    })
}

/// Entry point of `dfvs`. Returns the process exit code.
pub fn run_cli(
    args: Vec<OsString>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    cancel: &AtomicBool,
) -> i32 {
    let cli: SolveCli = match parse_args(args, stdout, stderr) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let config = match cli.solver.config() {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map(|_| s)
                .map_err(|e| format!("stdin: {e}"))
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_PARSE;
        }
    };
    let parsed = match parse_instance_with_warnings(&text) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "parse error: {e}");
            return EXIT_PARSE;
        }
    };
    for w in &parsed.warnings {
        log::warn!("{w}");
    }
    let inst = parsed.instance;
    let outcome = solve(&inst, &config, Some(cancel));
    log::info!(
        "solution size {} after {} local-search iterations",
        outcome.best.size(),
        outcome.stats.iterations
    );
    if cli.validate && !is_valid_dfvs(&inst, outcome.best.vertices()) {
        let _ = writeln!(
            stderr,
            "error: solution of size {} is not a feedback vertex set",
            outcome.best.size()
        );
        return EXIT_INVALID;
    }
    let mut out = BufWriter::new(stdout);
    if let Err(e) = write_solution(&outcome.best, &mut out) {
        let _ = writeln!(stderr, "error: writing solution: {e}");
        return EXIT_USAGE;
    }
    EXIT_OK
}

/// Entry point of `dfvs-bench`.
pub fn run_bench_cli(
    args: Vec<OsString>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    cancel: &AtomicBool,
) -> i32 {
    let cli: BenchCli = match parse_args(args, stdout, stderr) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let config = match cli.solver.config() {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let report = match run_benchmark(&cli.directory, &config, Some(cancel)) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}: {e}", cli.directory.display());
            return EXIT_USAGE;
        }
    };
    let written = match &cli.report {
        Some(path) => std::fs::File::create(path)
            .map_err(csv::Error::from)
            .and_then(|f| report.write_tsv(f)),
        None => report.write_tsv(&mut *stdout),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: writing report: {e}");
        return EXIT_USAGE;
    }
    let s = report.summary();
    let _ = writeln!(
        stderr,
        "{} instances, {} failed, {} invalid, total size {}, {:.2}s",
        s.instances,
        s.failed,
        s.invalid,
        s.total_size,
        s.total_wall.as_secs_f64()
    );
    if s.invalid > 0 {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}
