use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hecke_bound::{list_checks, run, CliError, Emit, FileConfig, RunConfig};

/// Exact degree-bound verifier for rank-3 Hecke algebras with m(t,r) = 2.
#[derive(Debug, Parser)]
#[command(name = "hecke-bound", version)]
struct Args {
    /// Order of sr (at least 3).
    #[arg(long = "m-sr")]
    m_sr: Option<u32>,
    /// Order of st (at least 3).
    #[arg(long = "m-st")]
    m_st: Option<u32>,
    /// Length cap N applied to every selected check.
    #[arg(long = "max-length")]
    max_length: Option<usize>,
    /// Check id or alias (all, theorem, suffix, sandwich, ladder, invariants). Repeatable.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Report format.
    #[arg(long, value_enum)]
    emit: Option<Emit>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Persistent reduction cache file.
    #[arg(long, env = "HECKE_BOUND_CACHE")]
    cache: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Reuse prefix products inside pair scans.
    #[arg(long)]
    memo: bool,
    /// `key = value` file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print every registered check and exit.
    #[arg(long = "list-checks")]
    list_checks: bool,
}

fn build_config(args: Args) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let m_sr = args
        .m_sr
        .or(file.m_sr)
        .ok_or_else(|| CliError::Usage("--m-sr is required".into()))?;
    let m_st = args
        .m_st
        .or(file.m_st)
        .ok_or_else(|| CliError::Usage("--m-st is required".into()))?;
    let mut cfg = RunConfig::new(m_sr, m_st);
    cfg.max_length = args.max_length.or(file.max_length);
    cfg.checks = if args.checks.is_empty() {
        file.checks
    } else {
        args.checks
    };
    cfg.emit = args.emit.or(file.emit).unwrap_or_default();
    cfg.out = args.out.or(file.out);
    cfg.cache = args.cache.or(file.cache);
    cfg.jobs = args.jobs.or(file.jobs).unwrap_or(0);
    cfg.memo = args.memo || file.memo.unwrap_or(false);
    Ok(cfg)
}

fn fail(err: CliError) -> ExitCode {
    eprintln!("{}", err.to_json_line());
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if args.list_checks {
        print!("{}", list_checks());
        return ExitCode::SUCCESS;
    }
    let cfg = match build_config(args) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match run(&cfg) {
        Ok(outcome) => {
            if cfg.out.is_none() {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(outcome.rendered.as_bytes()).is_err() {
                    return fail(CliError::Io("cannot write to stdout".into()));
                }
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => fail(e),
    }
}
