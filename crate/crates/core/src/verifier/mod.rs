//! Executable versions of the suffix, sandwich and degree statements, the
//! boundedness theorem, and the algebraic invariants, over length windows.
//!
//! Each check produces a [`CheckReport`]. A check whose hypothesis does not
//! hold for the group still runs, but its status is
//! [`Status::Advisory`] and never counts as a failure.

mod checks;
mod output;
pub mod registry;
pub mod scan;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{CoxeterError, Element, Group, GroupParams, Word};
use crate::hecke::Hecke;
use crate::kl::{KlError, KlTable};
use crate::laurent::Coefficient;

pub use output::{render_csv, render_text};
pub use registry::{resolve, CheckKind, CheckSpec, Hypothesis, CHECKS};
pub use scan::{scan_pairs, DegreeScan, PairJob};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Kl(#[from] KlError),
    #[error("malformed witness {0:?}")]
    BadWitness(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Advisory,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Advisory => "advisory",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub m_sr: u32,
    pub m_st: u32,
}

impl From<&GroupParams> for ParamsRecord {
    fn from(p: &GroupParams) -> Self {
        ParamsRecord {
            m_sr: p.m_sr(),
            m_st: p.m_st(),
        }
    }
}

/// Outcome of one check.
///
/// Witnesses are tuples of ShortLex normal forms, `e` for the neutral
/// element; their layout depends on the check kind (see [`replay`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub statement: String,
    pub params: ParamsRecord,
    #[serde(rename = "N")]
    pub n: usize,
    pub status: Status,
    pub hypothesis: String,
    pub hypothesis_met: bool,
    pub bound: Option<u32>,
    pub max_degree_seen: u32,
    pub pairs_scanned: u64,
    pub witness_count: u64,
    pub witnesses: Vec<Vec<String>>,
    pub argmax: Vec<Vec<String>>,
    pub histogram: BTreeMap<u32, u64>,
    /// Largest degree per `"l(x),l(y)"` stratum.
    pub stratum_max: BTreeMap<String, u32>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

/// Everything one run produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format_version: u32,
    pub params: ParamsRecord,
    pub case: String,
    pub checks: Vec<CheckReport>,
}

impl RunReport {
    pub fn new(params: &GroupParams, checks: Vec<CheckReport>) -> RunReport {
        RunReport {
            format_version: FORMAT_VERSION,
            params: params.into(),
            case: params.case().label().to_string(),
            checks,
        }
    }

    /// True iff no asserting check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Copy with every timing field zeroed.
    pub fn without_timing(&self) -> RunReport {
        let mut out = self.clone();
        for c in &mut out.checks {
            c.seconds = 0.0;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Witness spelling: ShortLex normal form, `e` for the neutral element.
pub fn spell(group: &Group, w: Element) -> String {
    if w.is_identity() {
        "e".to_string()
    } else {
        group.name(w)
    }
}

/// Inverse of [`spell`]; accepts any word.
pub fn unspell(group: &Group, s: &str) -> Result<Element, CoxeterError> {
    if s == "e" {
        return Ok(group.neutral());
    }
    group.reduce(&s.parse::<Word>()?)
}

/// Runs checks against one group. Scans use the current rayon pool.
pub struct Verifier<'g, C: Coefficient> {
    group: &'g Group,
    hecke: Hecke<'g, C>,
    kl: KlTable<'g, C>,
    memo: bool,
}

impl<'g, C: Coefficient> Verifier<'g, C> {
    pub fn new(group: &'g Group, memo: bool) -> Self {
        Verifier {
            group,
            hecke: Hecke::new(group),
            kl: KlTable::new(group),
            memo,
        }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    /// Runs a registered check at cap `n`, or at its default cap.
    pub fn run(&self, id: &str, n: Option<usize>) -> Result<CheckReport, VerifyError> {
        let spec = registry::find(id).ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))?;
        self.run_spec(spec, n)
    }

    pub fn run_spec(&self, spec: &CheckSpec, n: Option<usize>) -> Result<CheckReport, VerifyError> {
        let params = *self.group.params();
        let n = n.unwrap_or_else(|| spec.default_length());
        self.group.ensure_length(spec.required_length(&params, n))?;
        let started = Instant::now();
        let outcome = self.execute(spec.kind, n)?;
        let hypothesis_met = spec.hypothesis.holds(&params);
        let status = if !hypothesis_met {
            Status::Advisory
        } else if outcome.violation_count > 0 {
            Status::Fail
        } else {
            Status::Pass
        };
        let mut notes = outcome.notes;
        if !hypothesis_met {
            notes.insert(
                0,
                format!("hypothesis not met ({}); scan is advisory", spec.hypothesis.describe()),
            );
        }
        Ok(CheckReport {
            id: spec.id.to_string(),
            statement: spec.statement.to_string(),
            params: (&params).into(),
            n,
            status,
            hypothesis: spec.hypothesis.describe().to_string(),
            hypothesis_met,
            bound: outcome.bound,
            max_degree_seen: outcome.max_degree,
            pairs_scanned: outcome.scanned,
            witness_count: outcome.violation_count,
            witnesses: outcome.witnesses,
            argmax: outcome.argmax,
            histogram: outcome.histogram,
            stratum_max: outcome
                .strata
                .into_iter()
                .map(|((a, b), d)| (format!("{a},{b}"), d))
                .collect(),
            notes,
            seconds: started.elapsed().as_secs_f64(),
        })
    }

    /// Pair-degree histogram over `l(x), l(y) <= n`.
    pub fn scan_degrees(&self, n: usize) -> Result<DegreeScan, VerifyError> {
        self.group.ensure_length(2 * n)?;
        Ok(scan_pairs(&self.hecke, scan::all_pairs(self.group, n), None, self.memo))
    }
}

/// What an executor hands back before it is wrapped into a report.
#[derive(Debug, Default)]
struct Outcome {
    scanned: u64,
    bound: Option<u32>,
    max_degree: u32,
    violation_count: u64,
    witnesses: Vec<Vec<String>>,
    argmax: Vec<Vec<String>>,
    histogram: BTreeMap<u32, u64>,
    strata: BTreeMap<(usize, usize), u32>,
    notes: Vec<String>,
}

/// Re-verifies one witness of a check; `Ok(true)` iff it still violates the
/// check's statement.
pub fn replay<C: Coefficient>(group: &Group, id: &str, witness: &[String]) -> Result<bool, VerifyError> {
    let spec = registry::find(id).ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))?;
    checks::replay::<C>(group, spec, witness)
}
