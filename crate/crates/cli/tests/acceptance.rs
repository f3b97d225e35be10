//! Acceptance suite: one pass/fail line per criterion. Runs without the
//! libtest harness so the lines always reach stdout.

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::process::ExitCode;
use std::time::Instant;

use hecke_bound::{run, RunConfig};
use rank3_hecke::verifier::{RunReport, Status};
use rank3_hecke::{Group, GroupParams, HalfLaurent, KlTable};

type Verdict = Result<String, String>;

const CASE_B: [(u32, u32); 3] = [(5, 4), (5, 5), (6, 4)];

fn run_checks(m_sr: u32, m_st: u32, checks: &[&str], n: Option<usize>, jobs: usize) -> Result<RunReport, String> {
    let mut cfg = RunConfig::new(m_sr, m_st);
    cfg.checks = checks.iter().map(|s| s.to_string()).collect();
    cfg.max_length = n;
    cfg.jobs = jobs;
    cfg.memo = true;
    run(&cfg).map(|o| o.report).map_err(|e| e.to_string())
}

/// Every listed check must pass (not merely be advisory).
fn all_pass(m_sr: u32, m_st: u32, checks: &[&str], n: usize) -> Verdict {
    let report = run_checks(m_sr, m_st, checks, Some(n), 0)?;
    let mut summary = Vec::new();
    for c in &report.checks {
        if c.status != Status::Pass {
            return Err(format!(
                "{} in ({m_sr},{m_st}) at N={n}: {} with {} witnesses {:?}",
                c.id,
                c.status.label(),
                c.witness_count,
                c.witnesses.first()
            ));
        }
        summary.push(match c.bound {
            Some(b) => format!("{}<={b}:max {}", c.id, c.max_degree_seen),
            None => c.id.clone(),
        });
    }
    Ok(format!("({m_sr},{m_st}) N={n} [{}]", summary.join(", ")))
}

fn criterion_1() -> Verdict {
    all_pass(7, 3, &["theorem-3.13"], 8)
}

fn criterion_2() -> Verdict {
    let parts: Result<Vec<String>, String> = CASE_B
        .iter()
        .map(|&(a, b)| all_pass(a, b, &["theorem-2.1b"], 8))
        .collect();
    Ok(parts?.join("; "))
}

fn criterion_3() -> Verdict {
    let mut parts = vec![all_pass(
        7,
        3,
        &["lemma-3.1", "corollary-3.2", "corollary-3.3", "lemma-3.4"],
        12,
    )?];
    for (a, b) in [(4, 4), (5, 4), (5, 5), (6, 4)] {
        let report = run_checks(
            a,
            b,
            &["lemma-4.1", "corollary-4.2", "lemma-4.3", "lemma-4.4"],
            Some(12),
            0,
        )?;
        if let Some(c) = report
            .checks
            .iter()
            .find(|c| c.status != Status::Pass || c.witness_count > 0)
        {
            return Err(format!("{} in ({a},{b}): {}", c.id, c.status.label()));
        }
        parts.push(format!("({a},{b}) 7 ids"));
    }
    Ok(parts.join("; "))
}

fn criterion_4() -> Verdict {
    let mut parts = vec![all_pass(7, 3, &["lemma-3.5"], 6)?];
    for (a, b) in CASE_B {
        parts.push(all_pass(a, b, &["lemma-4.5"], 6)?);
    }
    Ok(parts.join("; "))
}

fn criterion_5() -> Verdict {
    let mut parts = vec![all_pass(
        7,
        3,
        &["lemma-3.6", "lemma-3.7", "corollary-3.8", "lemma-3.9", "lemma-3.10"],
        6,
    )?];
    for (a, b) in CASE_B {
        parts.push(all_pass(a, b, &["lemma-4.6", "lemma-4.7"], 6)?);
    }
    Ok(parts.join("; "))
}

fn criterion_6() -> Verdict {
    let mut parts = Vec::new();
    for m in [5, 7] {
        let report = run_checks(m, 3, &["lemma-3.11"], None, 0)?;
        let c = &report.checks[0];
        if c.status != Status::Pass || c.max_degree_seen != m {
            return Err(format!("m_sr={m}: {} with max {}", c.status.label(), c.max_degree_seen));
        }
        parts.push(format!(
            "m_sr={m}: {} pairs, max {} attained",
            c.pairs_scanned, c.max_degree_seen
        ));
    }
    Ok(parts.join("; "))
}

fn criterion_7() -> Verdict {
    let mut parts = Vec::new();
    for (a, b) in [(7, 3), (5, 4)] {
        parts.push(all_pass(a, b, &["invariants"], 6)?);
    }
    Ok(parts.join("; "))
}

fn criterion_8() -> Verdict {
    let kl_part = all_pass(7, 3, &["kl-window", "a-window"], 6)?;
    let g = Group::new(GroupParams::new(7, 3).unwrap());
    let kl = KlTable::new(&g);
    let s = g.parse("s").unwrap();
    let h = kl.h_coeffs(s, s);
    let eta = HalfLaurent::from_terms([(1, 1.into()), (-1, 1.into())]);
    if h.len() != 1 || h.get(&s) != Some(&eta) {
        return Err(format!("h(s,s) = {h:?}"));
    }
    Ok(format!("{kl_part}; h(s,s,s) = q^(1/2) + q^(-1/2)"))
}

fn criterion_9() -> Verdict {
    let mut words = 0;
    for (a, b) in [(7, 3), (5, 4)] {
        let g = Group::new(GroupParams::new(a, b).unwrap());
        let rels = oracles::relations(a, b);
        for w in oracles::all_words(8) {
            let ours = g.name(g.reduce(&w.parse().unwrap()).map_err(|e| e.to_string())?);
            let theirs = oracles::normal_form(&w, &rels);
            if ours != theirs {
                return Err(format!("({a},{b}) reduce {w:?}: {ours:?} vs {theirs:?}"));
            }
            words += 1;
        }
    }
    let g = Group::new(GroupParams::new(7, 3).unwrap());
    let rels = oracles::relations(7, 3);
    let elems = g.enumerate_up_to(7).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for &w in &elems {
        let below = oracles::subword_elements(&g.name(w), &rels);
        for &y in &elems {
            if g.bruhat_leq(y, w) != below.contains(&g.name(y)) {
                return Err(format!("bruhat {} <= {}", g.name(y), g.name(w)));
            }
            pairs += 1;
        }
    }
    Ok(format!("{words} words reduced, {pairs} Bruhat pairs"))
}

fn criterion_10() -> Verdict {
    let mut parts = Vec::new();
    for (a, b) in [(7, 3), (5, 4)] {
        let one = run_checks(a, b, &["all"], None, 1)?.without_timing().to_json();
        let eight = run_checks(a, b, &["all"], None, 8)?.without_timing().to_json();
        if one != eight {
            return Err(format!("({a},{b}): reports differ between 1 and 8 threads"));
        }
        parts.push(format!("({a},{b}) {} bytes identical", one.len()));
    }
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Verdict); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let started = Instant::now();
        let verdict = f();
        let secs = started.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {n:>2}: PASS ({secs:.2}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL ({secs:.2}s) {detail}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
