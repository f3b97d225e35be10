//! String-level brute-force oracles, independent of the engine's packed
//! words and Cayley table.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

/// Braid relations as `(lhs, rhs)` string pairs.
pub fn relations(m_sr: u32, m_st: u32) -> Vec<(String, String)> {
    let alt = |a: char, b: char, m: u32| (0..m).map(|i| if i % 2 == 0 { a } else { b }).collect::<String>();
    let mut out = Vec::new();
    for (a, b, m) in [('s', 't', m_st), ('s', 'r', m_sr), ('t', 'r', 2)] {
        out.push((alt(a, b, m), alt(b, a, m)));
        out.push((alt(b, a, m), alt(a, b, m)));
    }
    out
}

/// Every word reachable from `w` by braid moves.
pub fn braid_closure(w: &str, rels: &[(String, String)]) -> BTreeSet<String> {
    let mut seen = BTreeSet::from([w.to_string()]);
    let mut queue = VecDeque::from([w.to_string()]);
    while let Some(cur) = queue.pop_front() {
        for (lhs, rhs) in rels {
            let mut start = 0;
            while let Some(pos) = cur[start..].find(lhs.as_str()) {
                let at = start + pos;
                let next = format!("{}{}{}", &cur[..at], rhs, &cur[at + lhs.len()..]);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
                start = at + 1;
            }
        }
    }
    seen
}

fn shortlex_key(w: &str) -> (usize, Vec<u8>) {
    let rank = |c: char| match c {
        's' => 0,
        't' => 1,
        _ => 2,
    };
    (w.len(), w.chars().map(rank).collect())
}

/// ShortLex normal form by Tits' theorem: cancel a square somewhere in the
/// braid closure until none is left, then take the least word.
pub fn normal_form(w: &str, rels: &[(String, String)]) -> String {
    let mut cur = w.to_string();
    'outer: loop {
        let closure = braid_closure(&cur, rels);
        for word in &closure {
            let b = word.as_bytes();
            if let Some(i) = (1..b.len()).find(|&i| b[i] == b[i - 1]) {
                cur = format!("{}{}", &word[..i - 1], &word[i + 1..]);
                continue 'outer;
            }
        }
        return closure.into_iter().min_by_key(|w| shortlex_key(w)).unwrap();
    }
}

/// All words over `{s,t,r}` of length at most `n`.
pub fn all_words(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w| ['s', 't', 'r'].map(|c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Normal forms of all subwords of `w`.
pub fn subword_elements(w: &str, rels: &[(String, String)]) -> BTreeSet<String> {
    let chars: Vec<char> = w.chars().collect();
    (0u32..1 << chars.len())
        .map(|mask| {
            let sub: String = chars
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, c)| *c)
                .collect();
            normal_form(&sub, rels)
        })
        .collect()
}
