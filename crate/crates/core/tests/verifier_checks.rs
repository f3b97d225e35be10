use rank3_hecke::verifier::{self, replay, Status, Verifier};
use rank3_hecke::{GenSet, Generator, Group, GroupParams};

fn group(m_sr: u32, m_st: u32) -> Group {
    Group::with_max_length(GroupParams::new(m_sr, m_st).unwrap(), 40)
}

fn run(g: &Group, id: &str, n: usize) -> verifier::CheckReport {
    Verifier::<i64>::new(g, true).run(id, Some(n)).unwrap()
}

#[test]
fn suffix_patterns_in_case_a() {
    let g = group(7, 3);
    for id in ["lemma-3.1", "corollary-3.2", "corollary-3.3", "lemma-3.4"] {
        let r = run(&g, id, 10);
        assert_eq!(r.status, Status::Pass, "{id}");
        assert_eq!(r.witness_count, 0, "{id}");
    }
}

#[test]
fn suffix_negative_control_is_advisory() {
    let g = group(4, 3);
    let r = run(&g, "lemma-3.1", 10);
    assert_eq!(r.status, Status::Advisory);
    assert!(!r.hypothesis_met);
    // st = sr would need w_sr of length >= 7; in (4,3) both suffixes coexist
    assert!(r.witness_count > 0);
    for w in &r.witnesses {
        assert!(replay::<i64>(&g, "lemma-3.1", w).unwrap());
    }
}

#[test]
fn suffix_patterns_with_large_bonds() {
    for (a, b) in [(4, 4), (5, 4), (5, 5), (6, 4)] {
        let g = group(a, b);
        for id in [
            "lemma-4.1",
            "corollary-4.2",
            "lemma-4.3a",
            "lemma-4.3b",
            "lemma-4.3c",
            "lemma-4.3d",
            "lemma-4.4",
        ] {
            assert_eq!(run(&g, id, 10).status, Status::Pass, "{id} in ({a},{b})");
        }
    }
}

#[test]
fn sandwich_holds_on_the_six_window() {
    assert_eq!(run(&group(7, 3), "lemma-3.5", 6).status, Status::Pass);
    assert_eq!(run(&group(5, 4), "lemma-4.5-alpha-t", 5).status, Status::Pass);
    for (a, b) in [(5, 4), (5, 5), (6, 4)] {
        let g = group(a, b);
        assert_eq!(run(&g, "lemma-4.5-alpha-t", 6).status, Status::Pass);
        assert_eq!(run(&g, "lemma-4.5-alpha-r", 6).status, Status::Pass);
    }
}

#[test]
fn sandwich_descent_transfer_breaks_at_seven() {
    let g = group(7, 3);
    let r = run(&g, "lemma-3.5", 7);
    assert_eq!(r.status, Status::Fail);
    let w = ["srsrst", "rsrsr", "tsrsrsr"].map(String::from).to_vec();
    assert!(r.witnesses.contains(&w));
    assert!(replay::<i64>(&g, "lemma-3.5", &w).unwrap());
    let x = g.parse("srsrst").unwrap();
    let m = g.parse("rsrsr").unwrap();
    let y = g.parse("tsrsrsr").unwrap();
    let xw = g.multiply(x, m);
    let xwy = g.multiply(xw, y);
    assert_eq!(g.length(xwy), 18);
    assert_ne!(g.left_descents(xwy), g.left_descents(xw));
}

#[test]
fn sandwich_length_additivity_breaks_at_ten() {
    let g = group(7, 3);
    let x = g.parse("rsrsrst").unwrap();
    let w = g.parse("rsrsr").unwrap();
    let y = g.parse("tsrsrsr").unwrap();
    let sr = GenSet::of(&[Generator::S, Generator::R]);
    assert!(g.right_descents(x).intersection(sr).is_empty());
    assert!(g.left_descents(y).intersection(sr).is_empty());
    let xwy = g.multiply(g.multiply(x, w), y);
    assert!(g.length(xwy) < 19);
}

#[test]
fn degree_ladder_in_case_a() {
    let g = group(7, 3);
    let expect = [
        ("lemma-3.6", 1),
        ("lemma-3.7", 2),
        ("corollary-3.8", 2),
        ("lemma-3.9", 3),
        ("lemma-3.10", 4),
    ];
    for (id, bound) in expect {
        let r = run(&g, id, 6);
        assert_eq!(r.status, Status::Pass, "{id}");
        assert_eq!(r.bound, Some(bound), "{id}");
        assert!(r.max_degree_seen <= bound, "{id}");
    }
}

#[test]
fn degree_ladder_in_case_b() {
    for (a, b) in [(5, 4), (5, 5), (6, 4)] {
        let g = group(a, b);
        for id in ["lemma-4.6", "lemma-4.7-alpha-t", "lemma-4.7-alpha-r", "lemma-4.8"] {
            assert_eq!(run(&g, id, 6).status, Status::Pass, "{id} in ({a},{b})");
        }
    }
}

#[test]
fn dihedral_degrees_reach_the_length() {
    for m in [5, 7] {
        let g = group(m, 3);
        let r = run(&g, "lemma-3.11", 0);
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.max_degree_seen, m);
        assert_eq!(r.pairs_scanned, 4 * (m as u64) * (m as u64));
    }
}

#[test]
fn coset_products_and_theorem() {
    let g = group(7, 3);
    let r = run(&g, "lemma-3.12", 6);
    assert_eq!(r.status, Status::Pass);
    assert!(r.max_degree_seen <= 7);
    let r = run(&g, "theorem-3.13", 8);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.bound, Some(7));
    assert_eq!(r.max_degree_seen, 7);
    let trivial = run(&g, "theorem-3.13", 0);
    assert_eq!(trivial.status, Status::Pass);
    assert_eq!(trivial.pairs_scanned, 1);
}

#[test]
fn theorem_in_case_b() {
    for (a, b, bound) in [(5, 4, 5), (5, 5, 5), (6, 4, 6), (4, 5, 5)] {
        let g = group(a, b);
        let r = run(&g, "theorem-2.1b", 7);
        assert_eq!(r.bound, Some(bound));
        if (a, b) == (4, 5) {
            assert_eq!(r.status, Status::Advisory);
        } else {
            assert_eq!(r.status, Status::Pass, "({a},{b})");
        }
    }
}

#[test]
fn finite_group_is_an_advisory_scan() {
    let g = group(4, 3);
    let r = run(&g, "theorem-3.13", 8);
    assert_eq!(r.status, Status::Advisory);
    // B3 has a longest element of length 9 and a(w0) = 9
    assert!(r.max_degree_seen > 4);
}

#[test]
fn advisory_witnesses_replay() {
    let g = group(7, 3);
    let r = run(&g, "lemma-4.6", 8);
    assert_eq!(r.status, Status::Advisory);
    assert!(r.witness_count > 0);
    for w in &r.witnesses {
        assert!(replay::<i64>(&g, "lemma-4.6", w).unwrap(), "{w:?}");
    }
    let harmless = ["e", "e", "tr"].map(String::from).to_vec();
    assert!(!replay::<i64>(&g, "lemma-4.6", &harmless).unwrap());
    assert!(replay::<i64>(&g, "lemma-4.6", &["s".to_string()]).is_err());
}

#[test]
fn invariants_hold() {
    for (a, b) in [(7, 3), (5, 4), (4, 3)] {
        let g = group(a, b);
        for id in [
            "invariant-nonnegativity",
            "invariant-cyclic",
            "invariant-inverse",
            "invariant-associativity",
            "invariant-length-additive",
            "kl-window",
        ] {
            let r = run(&g, id, 5);
            assert_eq!(r.status, Status::Pass, "{id} in ({a},{b})");
        }
    }
}

#[test]
fn a_window_respects_the_bound() {
    let g = group(7, 3);
    let r = run(&g, "a-window", 5);
    assert_eq!(r.status, Status::Pass);
    assert!(r.max_degree_seen <= 7);
}

#[test]
fn histogram_window_six() {
    let g = group(7, 3);
    let v = Verifier::<i64>::new(&g, true);
    let scan = v.scan_degrees(6).unwrap();
    assert!(scan.max_degree <= 7);
    let n = g.enumerate_up_to(6).unwrap().len() as u64;
    assert_eq!(scan.pairs, n * n);
    assert_eq!(scan.histogram.values().sum::<u64>(), n * n);
}

#[test]
fn report_json_round_trips() {
    let g = group(5, 4);
    let reports = vec![run(&g, "lemma-4.6", 4), run(&g, "theorem-2.1b", 4)];
    let report = verifier::RunReport::new(g.params(), reports);
    let text = report.to_json();
    let back: verifier::RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert!(text.contains("\"N\": 4"));
    assert!(verifier::render_csv(&report).lines().count() == 3);
}
