//! Static table of checks: id, statement, hypothesis and executor kind.
//!
//! Everything that lists, selects or reports checks reads this table, so
//! ids, statements and executors cannot drift apart.

use crate::coxeter::{GenSet, Generator, GroupParams, TheoremCase};

/// Parameter condition under which a check asserts; outside it the check
/// still runs but is reported as advisory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// `m_sr >= 7`, `m_st = 3`.
    CaseA,
    /// `m_sr >= 4`, `m_st >= 4`.
    BondsAtLeastFour,
    /// `m_sr >= 5`, `m_st >= 4`.
    CaseB,
    /// Case A or case B.
    Bounded,
    Any,
}

impl Hypothesis {
    pub fn holds(self, p: &GroupParams) -> bool {
        match self {
            Hypothesis::CaseA => p.case() == TheoremCase::CaseA,
            Hypothesis::BondsAtLeastFour => p.m_sr() >= 4 && p.m_st() >= 4,
            Hypothesis::CaseB => p.case() == TheoremCase::CaseB,
            Hypothesis::Bounded => p.case() != TheoremCase::OutOfTheorem,
            Hypothesis::Any => true,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Hypothesis::CaseA => "m_sr >= 7, m_st = 3",
            Hypothesis::BondsAtLeastFour => "m_sr >= 4, m_st >= 4",
            Hypothesis::CaseB => "m_sr >= 5, m_st >= 4",
            Hypothesis::Bounded => "m_sr >= 7, m_st = 3 or m_sr >= 5, m_st >= 4",
            Hypothesis::Any => "none",
        }
    }
}

/// Degree bound asserted by a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Const(u32),
    MSr,
    /// `max(m_sr, m_st)`.
    MaxBond,
    /// The bound for the group's case; none outside both cases.
    Case,
}

impl Bound {
    pub fn value(self, p: &GroupParams) -> Option<u32> {
        match self {
            Bound::Const(c) => Some(c),
            Bound::MSr => Some(p.m_sr()),
            Bound::MaxBond => Some(p.m_sr().max(p.m_st())),
            Bound::Case => p.theorem_bound(),
        }
    }
}

/// Condition on `R(x)` (or `L(y)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentCond {
    Any,
    Avoids(GenSet),
    Equals(GenSet),
}

impl DescentCond {
    pub fn holds(self, d: GenSet) -> bool {
        match self {
            DescentCond::Any => true,
            DescentCond::Avoids(a) => d.intersection(a).is_empty(),
            DescentCond::Equals(e) => d == e,
        }
    }
}

/// Fixed factor glued onto `x` or `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Word(&'static str),
    Longest(GenSet),
}

/// `deg f_{x a, b y, z} <= bound` for `x`, `y` meeting descent conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreePattern {
    pub right_of_x: DescentCond,
    pub left_of_y: DescentCond,
    pub a: Factor,
    pub b: Factor,
    pub bound: Bound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// No `w` ends with both reduced words.
    Suffix(&'static str, &'static str),
    /// `x w y` for `w` in `W_{s,alpha}` with `l(w) >= min_len`.
    Sandwich {
        alpha: Generator,
        min_len: usize,
    },
    Degree(DegreePattern),
    /// Products inside the dihedral parabolic `W_{sr}`.
    Parabolic,
    /// Pairs whose `W_{sr}`-components have lengths `>= 1` summing to `>= 3`.
    Coset,
    /// Every pair, against the case bound.
    AllPairs(Bound),
    Nonnegativity,
    Cyclic,
    Inverse,
    Associativity,
    LengthAdditive,
    KlWindow,
    AWindow,
}

impl CheckKind {
    /// Whether the natural unit of work is a pair `(x, y)`.
    pub fn is_pair_scan(self) -> bool {
        !matches!(self, CheckKind::Suffix(..) | CheckKind::Parabolic | CheckKind::KlWindow)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckSpec {
    pub id: &'static str,
    pub statement: &'static str,
    pub hypothesis: Hypothesis,
    pub kind: CheckKind,
}

impl CheckSpec {
    /// Length cap used when the run does not set one.
    pub fn default_length(&self) -> usize {
        match self.kind {
            CheckKind::Parabolic => 0,
            CheckKind::KlWindow | CheckKind::AWindow => 6,
            CheckKind::Cyclic | CheckKind::Associativity => 6,
            CheckKind::Sandwich { .. } => 6,
            k if k.is_pair_scan() => 8,
            _ => 10,
        }
    }

    /// Longest element the check touches at cap `n`.
    pub fn required_length(&self, p: &GroupParams, n: usize) -> usize {
        let factor = |f: Factor| match f {
            Factor::Word(w) => w.len(),
            Factor::Longest(set) => {
                let g: Vec<_> = set.iter().collect();
                p.bond(g[0], g[1]) as usize
            }
        };
        match self.kind {
            CheckKind::Suffix(..) | CheckKind::KlWindow => n.max(2),
            CheckKind::Sandwich { alpha, .. } => 2 * n + p.bond(Generator::S, alpha) as usize,
            CheckKind::Degree(d) => 2 * n + factor(d.a) + factor(d.b),
            CheckKind::Parabolic => 2 * p.m_sr() as usize,
            CheckKind::Cyclic | CheckKind::Associativity => 3 * n,
            _ => 2 * n,
        }
    }
}

const SR: GenSet = GenSet::of(&[Generator::S, Generator::R]);
const ST: GenSet = GenSet::of(&[Generator::S, Generator::T]);
const TR: GenSet = GenSet::of(&[Generator::T, Generator::R]);
const S: GenSet = GenSet::of(&[Generator::S]);
const T: GenSet = GenSet::of(&[Generator::T]);
const R: GenSet = GenSet::of(&[Generator::R]);

const fn degree(right_of_x: DescentCond, left_of_y: DescentCond, a: Factor, b: Factor, bound: Bound) -> CheckKind {
    CheckKind::Degree(DegreePattern {
        right_of_x,
        left_of_y,
        a,
        b,
        bound,
    })
}

use DescentCond::{Any as AnyD, Avoids, Equals};
use Factor::{Longest, Word as W};

pub static CHECKS: &[CheckSpec] = &[
    CheckSpec {
        id: "lemma-3.1",
        statement: "no w = (w1)(st) = (w2)(sr)",
        hypothesis: Hypothesis::CaseA,
        kind: CheckKind::Suffix("st", "sr"),
    },
    CheckSpec {
        id: "corollary-3.2",
        statement: "no w = (w1)(srs) = (w2)(t)",
        hypothesis: Hypothesis::CaseA,
        kind: CheckKind::Suffix("srs", "t"),
    },
    CheckSpec {
        id: "corollary-3.3",
        statement: "no w = (w1)(srsr) = (w2)(t)",
        hypothesis: Hypothesis::CaseA,
        kind: CheckKind::Suffix("srsr", "t"),
    },
    CheckSpec {
        id: "lemma-3.4",
        statement: "no w = (w1)(ts) = (w2)(r)",
        hypothesis: Hypothesis::CaseA,
        kind: CheckKind::Suffix("ts", "r"),
    },
    CheckSpec {
        id: "lemma-3.5",
        statement: "w in W_sr, l(w) >= 5, r,s not in R(x) u L(y) => xwy = (x)(w)(y), R(xwy) = R(wy), L(xwy) = L(xw)",
        hypothesis: Hypothesis::CaseA,
        kind: CheckKind::Sandwich {
            alpha: Generator::R,
            min_len: 5,
        },
    },
    CheckSpec {
        id: "lemma-3.6",
        statement: "s,t not in R(x) u L(y) => deg f_{x sts, y, z} <= 1",
        hypothesis: Hypothesis::CaseA,
        kind: degree(Avoids(ST), Avoids(ST), W("sts"), W(""), Bound::Const(1)),
    },
    CheckSpec {
        id: "lemma-3.7",
        statement: "t,r not in R(x) u L(y) => deg f_{x tr, y, z} <= 2",
        hypothesis: Hypothesis::CaseA,
        kind: degree(Avoids(TR), Avoids(TR), W("tr"), W(""), Bound::Const(2)),
    },
    CheckSpec {
        id: "corollary-3.8",
        statement: "R(x) = {r}, L(y) = {t} => deg f_{x w_st, w_sr y, z} <= 2",
        hypothesis: Hypothesis::CaseA,
        kind: degree(Equals(R), Equals(T), Longest(ST), Longest(SR), Bound::Const(2)),
    },
    CheckSpec {
        id: "lemma-3.9",
        statement: "R(x) = {s}, L(y) = {t} => deg f_{x tr, w_sr y, z} <= 3",
        hypothesis: Hypothesis::CaseA,
        kind: degree(Equals(S), Equals(T), W("tr"), Longest(SR), Bound::Const(3)),
    },
    CheckSpec {
        id: "lemma-3.10",
        statement: "R(x) = {s}, L(y) = {r} => deg f_{x tr, w_st y, z} <= 4",
        hypothesis: Hypothesis::CaseA,
        kind: degree(Equals(S), Equals(R), W("tr"), Longest(ST), Bound::Const(4)),
    },
    CheckSpec {
        id: "lemma-3.11",
        statement: "w, u in W_sr => supp T~_w T~_u in W_sr, deg f_{w,u,v} <= l(v), equality at w = u = v = w_sr",
        hypothesis: Hypothesis::Any,
        kind: CheckKind::Parabolic,
    },
    CheckSpec {
        id: "lemma-3.12",
        statement: "x = x1 w, y = u y1 against W_sr, l(w), l(u) >= 1, l(w) + l(u) >= 3 => deg f_{x,y,z} <= m_sr",
        hypothesis: Hypothesis::CaseA,
        kind: CheckKind::Coset,
    },
    CheckSpec {
        id: "theorem-3.13",
        statement: "deg f_{x,y,z} <= m_sr for all x, y, z",
        hypothesis: Hypothesis::CaseA,
        kind: CheckKind::AllPairs(Bound::MSr),
    },
    CheckSpec {
        id: "lemma-4.1",
        statement: "no w = (w1)(r) = (w2)(ts)",
        hypothesis: Hypothesis::BondsAtLeastFour,
        kind: CheckKind::Suffix("r", "ts"),
    },
    CheckSpec {
        id: "corollary-4.2",
        statement: "no w = (w1)(t) = (w2)(rs)",
        hypothesis: Hypothesis::BondsAtLeastFour,
        kind: CheckKind::Suffix("t", "rs"),
    },
    CheckSpec {
        id: "lemma-4.3a",
        statement: "no w = (w1)(r) = (w2)(sts)",
        hypothesis: Hypothesis::BondsAtLeastFour,
        kind: CheckKind::Suffix("r", "sts"),
    },
    CheckSpec {
        id: "lemma-4.3b",
        statement: "no w = (w1)(r) = (w2)(tst)",
        hypothesis: Hypothesis::BondsAtLeastFour,
        kind: CheckKind::Suffix("r", "tst"),
    },
    CheckSpec {
        id: "lemma-4.3c",
        statement: "no w = (w1)(t) = (w2)(srs)",
        hypothesis: Hypothesis::BondsAtLeastFour,
        kind: CheckKind::Suffix("t", "srs"),
    },
    CheckSpec {
        id: "lemma-4.3d",
        statement: "no w = (w1)(t) = (w2)(rsr)",
        hypothesis: Hypothesis::BondsAtLeastFour,
        kind: CheckKind::Suffix("t", "rsr"),
    },
    CheckSpec {
        id: "lemma-4.4",
        statement: "no w = (w1)(sr) = (w2)(st)",
        hypothesis: Hypothesis::BondsAtLeastFour,
        kind: CheckKind::Suffix("sr", "st"),
    },
    CheckSpec {
        id: "lemma-4.5-alpha-t",
        statement: "w in W_st, l(w) >= 4, s,t not in R(x) u L(y) => xwy = (x)(w)(y), R(xwy) = R(wy), L(xwy) = L(xw)",
        hypothesis: Hypothesis::BondsAtLeastFour,
        kind: CheckKind::Sandwich {
            alpha: Generator::T,
            min_len: 4,
        },
    },
    CheckSpec {
        id: "lemma-4.5-alpha-r",
        statement: "w in W_sr, l(w) >= 4, s,r not in R(x) u L(y) => xwy = (x)(w)(y), R(xwy) = R(wy), L(xwy) = L(xw)",
        hypothesis: Hypothesis::BondsAtLeastFour,
        kind: CheckKind::Sandwich {
            alpha: Generator::R,
            min_len: 4,
        },
    },
    CheckSpec {
        id: "lemma-4.6",
        statement: "t,r not in R(x) u L(y) => deg f_{x tr, y, z} <= 1",
        hypothesis: Hypothesis::CaseB,
        kind: degree(Avoids(TR), Avoids(TR), W("tr"), W(""), Bound::Const(1)),
    },
    CheckSpec {
        id: "lemma-4.7-alpha-t",
        statement: "R(x) = {t}, L(y) = {s} => deg f_{x w_sr, tr y, z} <= 2",
        hypothesis: Hypothesis::CaseB,
        kind: degree(Equals(T), Equals(S), Longest(SR), W("tr"), Bound::Const(2)),
    },
    CheckSpec {
        id: "lemma-4.7-alpha-r",
        statement: "R(x) = {r}, L(y) = {s} => deg f_{x w_st, tr y, z} <= 2",
        hypothesis: Hypothesis::CaseB,
        kind: degree(Equals(R), Equals(S), Longest(ST), W("tr"), Bound::Const(2)),
    },
    CheckSpec {
        id: "lemma-4.8",
        statement: "deg f_{x tr, y, z} <= max(m_sr, m_st) for all x, y, z",
        hypothesis: Hypothesis::CaseB,
        kind: degree(AnyD, AnyD, W("tr"), W(""), Bound::MaxBond),
    },
    CheckSpec {
        id: "theorem-2.1b",
        statement: "deg f_{x,y,z} <= max(m_sr, m_st) for all x, y, z",
        hypothesis: Hypothesis::CaseB,
        kind: CheckKind::AllPairs(Bound::MaxBond),
    },
    CheckSpec {
        id: "invariant-nonnegativity",
        statement: "f_{w,u,v} has non-negative coefficients and deg f_{w,u,v} <= min(l(w), l(u), l(v))",
        hypothesis: Hypothesis::Any,
        kind: CheckKind::Nonnegativity,
    },
    CheckSpec {
        id: "invariant-cyclic",
        statement: "f_{w,u,v} = f_{u,v^-1,w^-1} = f_{v^-1,w,u^-1}",
        hypothesis: Hypothesis::Any,
        kind: CheckKind::Cyclic,
    },
    CheckSpec {
        id: "invariant-inverse",
        statement: "f_{w,u,v} = f_{u^-1,w^-1,v^-1}",
        hypothesis: Hypothesis::Any,
        kind: CheckKind::Inverse,
    },
    CheckSpec {
        id: "invariant-associativity",
        statement: "(T~_a T~_b) T~_c = T~_a (T~_b T~_c) on 1000 seeded random triples",
        hypothesis: Hypothesis::Any,
        kind: CheckKind::Associativity,
    },
    CheckSpec {
        id: "invariant-length-additive",
        statement: "l(wu) = l(w) + l(u) => T~_w T~_u = T~_{wu}",
        hypothesis: Hypothesis::Any,
        kind: CheckKind::LengthAdditive,
    },
    CheckSpec {
        id: "kl-window",
        statement: "P_{w,w} = 1, 2 deg P_{y,w} <= l(w) - l(y) - 1, C~_w unitriangular, h_{g,g,g} = q^(1/2) + q^(-1/2)",
        hypothesis: Hypothesis::Any,
        kind: CheckKind::KlWindow,
    },
    CheckSpec {
        id: "a-window",
        statement: "deg h_{w,u,v} <= case bound for l(w), l(u) <= N (a lower bound for a(v))",
        hypothesis: Hypothesis::Bounded,
        kind: CheckKind::AWindow,
    },
];

/// Registered check by id.
pub fn find(id: &str) -> Option<&'static CheckSpec> {
    CHECKS.iter().find(|c| c.id == id)
}

fn family(prefix: &str) -> Vec<&'static CheckSpec> {
    CHECKS
        .iter()
        .filter(|c| {
            c.id.strip_prefix(prefix)
                .is_some_and(|rest| rest.is_empty() || !rest.starts_with(|ch: char| ch.is_ascii_digit()))
        })
        .collect()
}

/// Expands ids and aliases into registered checks, in table order,
/// without duplicates.
///
/// Aliases: `all`; `theorem` (the theorem check for the group's case);
/// `suffix`, `sandwich`, `ladder`, `invariants`; and family prefixes such
/// as `lemma-4.3` or `lemma-4.7`.
pub fn resolve(names: &[String], params: &GroupParams) -> Result<Vec<&'static CheckSpec>, String> {
    let mut picked = vec![false; CHECKS.len()];
    for name in names {
        let hits: Vec<&'static CheckSpec> = match name.as_str() {
            "all" => CHECKS.iter().collect(),
            "theorem" => vec![match params.case() {
                TheoremCase::CaseB => find("theorem-2.1b").unwrap(),
                _ => find("theorem-3.13").unwrap(),
            }],
            "suffix" => CHECKS
                .iter()
                .filter(|c| matches!(c.kind, CheckKind::Suffix(..)))
                .collect(),
            "sandwich" => CHECKS
                .iter()
                .filter(|c| matches!(c.kind, CheckKind::Sandwich { .. }))
                .collect(),
            "ladder" => CHECKS
                .iter()
                .filter(|c| matches!(c.kind, CheckKind::Degree(_)))
                .collect(),
            "invariants" => CHECKS.iter().filter(|c| c.id.starts_with("invariant-")).collect(),
            other => match find(other) {
                Some(c) => vec![c],
                None => family(other),
            },
        };
        if hits.is_empty() {
            return Err(name.clone());
        }
        for c in hits {
            let i = CHECKS.iter().position(|x| x.id == c.id).unwrap();
            picked[i] = true;
        }
    }
    Ok(CHECKS.iter().zip(picked).filter(|(_, p)| *p).map(|(c, _)| c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: u32, b: u32) -> GroupParams {
        GroupParams::new(a, b).unwrap()
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = CHECKS.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CHECKS.len());
    }

    #[test]
    fn aliases() {
        let p = params(7, 3);
        let ids = |names: &[&str], p: &GroupParams| -> Vec<&str> {
            let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
            resolve(&names, p).unwrap().iter().map(|c| c.id).collect()
        };
        assert_eq!(ids(&["theorem"], &p), ["theorem-3.13"]);
        assert_eq!(ids(&["theorem"], &params(5, 4)), ["theorem-2.1b"]);
        assert_eq!(
            ids(&["lemma-4.3"], &p),
            ["lemma-4.3a", "lemma-4.3b", "lemma-4.3c", "lemma-4.3d"]
        );
        assert_eq!(ids(&["lemma-4.7"], &p), ["lemma-4.7-alpha-t", "lemma-4.7-alpha-r"]);
        assert_eq!(ids(&["lemma-3.1"], &p), ["lemma-3.1"]);
        assert_eq!(ids(&["suffix"], &p).len(), 11);
        assert_eq!(ids(&["all"], &p).len(), CHECKS.len());
        assert_eq!(
            ids(&["lemma-3.7", "lemma-3.6", "lemma-3.6"], &p),
            ["lemma-3.6", "lemma-3.7"]
        );
        assert!(resolve(&["lemma-9.9".to_string()], &p).is_err());
    }

    #[test]
    fn hypotheses() {
        assert!(Hypothesis::CaseA.holds(&params(7, 3)));
        assert!(!Hypothesis::CaseA.holds(&params(5, 4)));
        assert!(Hypothesis::BondsAtLeastFour.holds(&params(4, 4)));
        assert!(!Hypothesis::CaseB.holds(&params(4, 4)));
        assert!(Hypothesis::Bounded.holds(&params(5, 5)));
        assert!(!Hypothesis::Bounded.holds(&params(4, 3)));
    }
}
