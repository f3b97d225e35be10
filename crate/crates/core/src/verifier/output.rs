//! CSV and plain-text renderings of a [`RunReport`]. JSON is the serde form.

use std::fmt::Write;

use super::RunReport;

fn opt(v: Option<u32>) -> String {
    v.map_or_else(String::new, |b| b.to_string())
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row per check.
pub fn render_csv(report: &RunReport) -> String {
    let mut out = String::from(
        "id,m_sr,m_st,N,status,hypothesis_met,bound,max_degree_seen,pairs_scanned,witness_count,first_witness,histogram,seconds\n",
    );
    for c in &report.checks {
        let hist: Vec<String> = c.histogram.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        let first = c.witnesses.first().map(|w| w.join(" ")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
            c.id,
            c.params.m_sr,
            c.params.m_st,
            c.n,
            c.status.label(),
            c.hypothesis_met,
            opt(c.bound),
            c.max_degree_seen,
            c.pairs_scanned,
            c.witness_count,
            quote(&first),
            quote(&hist.join(" ")),
            c.seconds
        )
        .unwrap();
    }
    out
}

/// Human-readable summary, one line per check plus witnesses and notes.
pub fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "group m_sr={} m_st={} m_tr=2, case {}",
        report.params.m_sr, report.params.m_st, report.case
    )
    .unwrap();
    for c in &report.checks {
        let bound = c.bound.map_or_else(|| "-".to_string(), |b| b.to_string());
        writeln!(
            out,
            "{:<9} {:<26} N={:<3} max={:<3} bound={:<3} scanned={:<9} witnesses={} ({:.2}s)",
            c.status.label(),
            c.id,
            c.n,
            c.max_degree_seen,
            bound,
            c.pairs_scanned,
            c.witness_count,
            c.seconds
        )
        .unwrap();
        for w in &c.witnesses {
            writeln!(out, "          witness: {}", w.join(" | ")).unwrap();
        }
        for note in &c.notes {
            writeln!(out, "          note: {note}").unwrap();
        }
    }
    let failed = report.checks.iter().filter(|c| c.status == super::Status::Fail).count();
    writeln!(out, "{} checks, {} failed", report.checks.len(), failed).unwrap();
    out
}
