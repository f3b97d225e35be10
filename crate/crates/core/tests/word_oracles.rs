mod oracles;

use std::collections::BTreeSet;

use rank3_hecke::{Group, GroupParams};

fn group(m_sr: u32, m_st: u32) -> Group {
    Group::new(GroupParams::new(m_sr, m_st).unwrap())
}

#[test]
fn reduce_matches_braid_closure() {
    for (a, b) in [(7, 3), (5, 4), (4, 3)] {
        let g = group(a, b);
        let rels = oracles::relations(a, b);
        for w in oracles::all_words(6) {
            let e = g.reduce(&w.parse().unwrap()).unwrap();
            assert_eq!(g.name(e), oracles::normal_form(&w, &rels), "{w} in ({a},{b})");
        }
    }
}

#[test]
fn bruhat_matches_subwords() {
    let (a, b) = (7, 3);
    let g = group(a, b);
    let rels = oracles::relations(a, b);
    let elems = g.enumerate_up_to(5).unwrap();
    for &w in &elems {
        let below = oracles::subword_elements(&g.name(w), &rels);
        for &y in &elems {
            assert_eq!(
                g.bruhat_leq(y, w),
                below.contains(&g.name(y)),
                "{} <= {}",
                g.name(y),
                g.name(w)
            );
        }
    }
}

#[test]
fn layer_sizes_match_the_oracle() {
    let g = group(7, 3);
    let rels = oracles::relations(7, 3);
    let forms: BTreeSet<String> = oracles::all_words(5)
        .iter()
        .map(|w| oracles::normal_form(w, &rels))
        .collect();
    for n in 0..=5 {
        let expected = forms.iter().filter(|w| w.len() == n).count();
        assert_eq!(g.layer(n).unwrap().len(), expected, "layer {n}");
    }
    // st, ts, sr, rs, tr
    assert_eq!(g.layer(2).unwrap().len(), 5);
}

#[test]
fn braid_closures_agree() {
    let p = GroupParams::new(7, 3).unwrap();
    let rels = oracles::relations(7, 3);
    for w in ["s", "sts", "tr", "srsrsrs", "tsrts"] {
        let ours: BTreeSet<String> = rank3_hecke::word_problem::braid_closure(&p, &w.parse().unwrap())
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(ours, oracles::braid_closure(w, &rels), "{w}");
    }
}
