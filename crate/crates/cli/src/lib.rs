//! Configuration, dispatch and report emission for `hecke-bound`.
//!
//! [`run`] is the whole program minus argument parsing, so it can be driven
//! from tests with a [`RunConfig`].

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rank3_hecke::coxeter::DEFAULT_MAX_WORD_LENGTH;
use rank3_hecke::verifier::{self, registry, render_csv, render_text, CheckReport, RunReport};
use rank3_hecke::word_problem::{ReductionCache, WordError, MAX_PACKED_LEN};
use rank3_hecke::{Group, GroupParams};
use thiserror::Error;

/// Coefficient ring for scans.
///
/// Every coefficient of `T~_w T~_u` is at most `2^l(u)` in absolute value
/// and lengths are capped at 64 letters, so `i128` cannot overflow here.
pub type Scalar = i128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Emit {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Emit {
    type Err = String;

    fn from_str(s: &str) -> Result<Emit, String> {
        match s {
            "json" => Ok(Emit::Json),
            "csv" => Ok(Emit::Csv),
            "text" => Ok(Emit::Text),
            other => Err(format!("unknown output format {other:?} (expected json, csv or text)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub m_sr: u32,
    pub m_st: u32,
    /// Length cap for every check; each check's own default when unset.
    pub max_length: Option<usize>,
    /// Check ids or aliases; empty means `all`.
    pub checks: Vec<String>,
    pub emit: Emit,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub memo: bool,
}

impl RunConfig {
    pub fn new(m_sr: u32, m_st: u32) -> RunConfig {
        RunConfig {
            m_sr,
            m_st,
            max_length: None,
            checks: Vec::new(),
            emit: Emit::Json,
            out: None,
            cache: None,
            jobs: 0,
            memo: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Cache(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Config(_) => "config",
            CliError::Cache(_) => "cache",
            CliError::Io(_) => "io",
            CliError::Internal(_) => "internal",
        }
    }

    /// One JSON object on one line, for stderr.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }

    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Result of a completed run.
pub struct RunOutcome {
    pub report: RunReport,
    pub rendered: String,
}

impl RunOutcome {
    /// 0 iff no asserting check failed.
    pub fn exit_code(&self) -> i32 {
        if self.report.passed() {
            0
        } else {
            1
        }
    }
}

/// Values read from a `key = value` file. Any field may be missing.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub m_sr: Option<u32>,
    pub m_st: Option<u32>,
    pub max_length: Option<usize>,
    pub checks: Vec<String>,
    pub emit: Option<Emit>,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub memo: Option<bool>,
}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("config line {line}: bad value {value:?} for {key}")))
}

impl FileConfig {
    /// Parses `key = value` lines; `#` starts a comment. Keys use either
    /// `m_sr` or `m-sr` spelling. `check` may repeat or hold a
    /// comma-separated list.
    pub fn parse(text: &str) -> Result<FileConfig, CliError> {
        let mut cfg = FileConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("config line {line}: expected key = value")))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            match key.as_str() {
                "m_sr" => cfg.m_sr = Some(parse_value(&key, value, line)?),
                "m_st" => cfg.m_st = Some(parse_value(&key, value, line)?),
                "max_length" => cfg.max_length = Some(parse_value(&key, value, line)?),
                "check" | "checks" => cfg.checks.extend(
                    value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(String::from),
                ),
                "emit" => {
                    cfg.emit = Some(
                        value
                            .parse()
                            .map_err(|e| CliError::Config(format!("config line {line}: {e}")))?,
                    )
                }
                "out" => cfg.out = Some(PathBuf::from(value)),
                "cache" => cfg.cache = Some(PathBuf::from(value)),
                "jobs" => cfg.jobs = Some(parse_value(&key, value, line)?),
                "memo" => cfg.memo = Some(parse_value(&key, value, line)?),
                other => return Err(CliError::Config(format!("config line {line}: unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        FileConfig::parse(&text)
    }
}

/// Stable listing of every registered check: id, hypothesis, statement.
pub fn list_checks() -> String {
    let mut out = String::new();
    for c in registry::CHECKS {
        out.push_str(&format!("{}\t[{}]\t{}\n", c.id, c.hypothesis.describe(), c.statement));
    }
    out
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Io(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    let io = |e: std::io::Error| CliError::Io(format!("writing {}: {e}", path.display()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn cache_error(path: &Path, e: WordError) -> CliError {
    CliError::Cache(format!("cache {}: {e}", path.display()))
}

/// Renders a report in the requested format.
pub fn render(report: &RunReport, emit: Emit) -> String {
    match emit {
        Emit::Json => report.to_json() + "\n",
        Emit::Csv => render_csv(report),
        Emit::Text => render_text(report),
    }
}

/// Executes the configured checks in registry order and writes the report
/// to `config.out` if set.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let params = GroupParams::new(config.m_sr, config.m_st).map_err(|e| CliError::Config(e.to_string()))?;
    let names = if config.checks.is_empty() {
        vec!["all".to_string()]
    } else {
        config.checks.clone()
    };
    let specs = verifier::resolve(&names, &params).map_err(|bad| {
        CliError::Usage(format!(
            "unknown check id {bad:?}; run with --list-checks to see the registered ids"
        ))
    })?;

    let needed = specs
        .iter()
        .map(|s| s.required_length(&params, config.max_length.unwrap_or_else(|| s.default_length())))
        .max()
        .unwrap_or(0);
    if needed > MAX_PACKED_LEN {
        return Err(CliError::Config(format!(
            "the requested checks need elements of length {needed}, above the supported maximum of {MAX_PACKED_LEN}"
        )));
    }

    let cache = ReductionCache::new(params);
    if let Some(path) = &config.cache {
        if path.exists() {
            cache.load(path).map_err(|e| cache_error(path, e))?;
        }
    }
    let group = Group::with_cache(cache, needed.max(DEFAULT_MAX_WORD_LENGTH));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    let reports: Vec<CheckReport> = pool.install(|| {
        let v = verifier::Verifier::<Scalar>::new(&group, config.memo);
        specs
            .iter()
            .map(|spec| v.run_spec(spec, config.max_length))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Internal(e.to_string()))
    })?;

    if let Some(path) = &config.cache {
        group.cache().save(path).map_err(|e| cache_error(path, e))?;
    }

    let report = RunReport::new(&params, reports);
    let rendered = render(&report, config.emit);
    if let Some(path) = &config.out {
        write_atomic(path, &rendered)?;
    }
    Ok(RunOutcome { report, rendered })
}

impl fmt::Display for Emit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Emit::Json => "json",
            Emit::Csv => "csv",
            Emit::Text => "text",
        })
    }
}
