//! Executors for each [`CheckKind`], and witness replay.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::registry::{Bound, CheckKind, CheckSpec, DegreePattern, Factor};
use super::scan::{self, DegreeScan, LeftWalker, PairJob, WITNESS_LIMIT};
use super::{spell, unspell, Outcome, Verifier, VerifyError};
use crate::coxeter::{Element, GenSet, Generator, Group, Side, Word};
use crate::hecke::{max_degree, Hecke, HeckeVector};
use crate::kl::KlTable;
use crate::laurent::{Coefficient, Degree, HalfLaurent, XiPoly};

const SR: GenSet = GenSet::of(&[Generator::S, Generator::R]);
const ASSOCIATIVITY_TRIPLES: usize = 1000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed_a55c;

/// Violations found by one unit of parallel work, merged in input order.
#[derive(Default)]
struct Found {
    scanned: u64,
    count: u64,
    witnesses: Vec<Vec<Element>>,
    max_degree: u32,
    histogram: BTreeMap<u32, u64>,
}

impl Found {
    fn violation(&mut self, w: Vec<Element>) {
        self.count += 1;
        if self.witnesses.len() < WITNESS_LIMIT {
            self.witnesses.push(w);
        }
    }

    fn degree(&mut self, d: u32) {
        self.max_degree = self.max_degree.max(d);
        *self.histogram.entry(d).or_default() += 1;
    }

    fn merge_all(parts: Vec<Found>) -> Found {
        let mut out = Found::default();
        for p in parts {
            out.scanned += p.scanned;
            out.count += p.count;
            out.witnesses.extend(p.witnesses);
            out.max_degree = out.max_degree.max(p.max_degree);
            for (d, n) in p.histogram {
                *out.histogram.entry(d).or_default() += n;
            }
        }
        out.witnesses.sort();
        out.witnesses.truncate(WITNESS_LIMIT);
        out
    }

    fn into_outcome(self, group: &Group) -> Outcome {
        Outcome {
            scanned: self.scanned,
            max_degree: self.max_degree,
            violation_count: self.count,
            witnesses: spell_all(group, &self.witnesses),
            histogram: self.histogram,
            ..Outcome::default()
        }
    }
}

fn spell_all(group: &Group, ws: &[Vec<Element>]) -> Vec<Vec<String>> {
    ws.iter()
        .map(|w| w.iter().map(|e| spell(group, *e)).collect())
        .collect()
}

fn triples(group: &Group, ts: &[scan::Triple]) -> Vec<Vec<String>> {
    ts.iter()
        .map(|(a, b, c)| vec![spell(group, *a), spell(group, *b), spell(group, *c)])
        .collect()
}

fn from_scan(group: &Group, s: DegreeScan, bound: Option<u32>) -> Outcome {
    Outcome {
        scanned: s.pairs,
        bound,
        max_degree: s.max_degree,
        violation_count: s.violation_count,
        witnesses: triples(group, &s.violations),
        argmax: triples(group, &s.argmax),
        histogram: s.histogram,
        strata: s.strata,
        notes: Vec::new(),
    }
}

/// `w = (w1)(word)`, for a word already known to be reduced.
fn ends_with(group: &Group, w: Element, word: &Word) -> bool {
    let mut x = w;
    for g in word.gens().iter().rev() {
        if !group.right_descents(x).contains(*g) {
            return false;
        }
        x = group.multiply_gen(x, *g, Side::Right);
    }
    true
}

fn factor(group: &Group, f: Factor) -> Result<Element, VerifyError> {
    Ok(match f {
        Factor::Word(w) => group.reduce(&w.parse()?)?,
        Factor::Longest(set) => group.longest_parabolic(set)?,
    })
}

fn sandwich_holds(group: &Group, x: Element, w: Element, y: Element) -> bool {
    let xw = group.multiply(x, w);
    let wy = group.multiply(w, y);
    let xwy = group.multiply(xw, y);
    group.length(xwy) == group.length(x) + group.length(w) + group.length(y)
        && group.right_descents(xwy) == group.right_descents(wy)
        && group.left_descents(xwy) == group.left_descents(xw)
}

fn parabolic_violation<C: Coefficient>(
    group: &Group,
    members: &BTreeSet<Element>,
    w0: Element,
    w: Element,
    u: Element,
    prod: &HeckeVector<XiPoly<C>>,
) -> Vec<Element> {
    let mut bad = Vec::new();
    for (v, c) in prod.terms() {
        let deg = c.degree().or_zero() as usize;
        let tight_miss = w == w0 && u == w0 && v == w0 && deg != group.length(w0);
        if !members.contains(&v) || deg > group.length(v) || tight_miss {
            bad.push(v);
        }
    }
    if w == w0 && u == w0 && prod.get(w0).is_none() {
        bad.push(w0);
    }
    bad
}

fn nonnegativity_violation<C: Coefficient>(group: &Group, w: Element, u: Element, v: Element, c: &XiPoly<C>) -> bool {
    let cap = group.length(w).min(group.length(u)).min(group.length(v)) as i64;
    !c.is_nonnegative() || c.degree() > Degree::Finite(cap)
}

fn cyclic_violation<C: Coefficient>(hecke: &Hecke<'_, C>, w: Element, u: Element, v: Element, c: &XiPoly<C>) -> bool {
    let g = hecke.group();
    let (wi, ui, vi) = (g.inverse(w), g.inverse(u), g.inverse(v));
    hecke.f_coeff(u, vi, wi) != *c || hecke.f_coeff(vi, w, ui) != *c
}

fn inverse_violation<C: Coefficient>(
    hecke: &Hecke<'_, C>,
    w: Element,
    u: Element,
    prod: &HeckeVector<XiPoly<C>>,
) -> bool {
    let g = hecke.group();
    let flipped = hecke.product(g.inverse(u), g.inverse(w));
    flipped.len() != prod.len() || prod.terms().any(|(v, c)| flipped.coeff(g.inverse(v)) != *c)
}

fn associativity_violation<C: Coefficient>(hecke: &Hecke<'_, C>, a: Element, b: Element, c: Element) -> bool {
    let left = hecke.mul_basis_right(&hecke.product(a, b), c);
    let right = hecke.multiply(&HeckeVector::basis(a), &hecke.product(b, c));
    left != right
}

fn length_additive_violation<C: Coefficient>(
    group: &Group,
    w: Element,
    u: Element,
    prod: &HeckeVector<XiPoly<C>>,
) -> bool {
    let wu = group.multiply(w, u);
    group.length(wu) == group.length(w) + group.length(u) && *prod != HeckeVector::basis(wu)
}

fn eta<C: Coefficient>() -> HalfLaurent<C> {
    HalfLaurent::eta()
}

impl<'g, C: Coefficient> Verifier<'g, C> {
    pub(super) fn execute(&self, kind: CheckKind, n: usize) -> Result<Outcome, VerifyError> {
        match kind {
            CheckKind::Suffix(a, b) => self.suffix(a, b, n),
            CheckKind::Sandwich { alpha, min_len } => self.sandwich(alpha, min_len, n),
            CheckKind::Degree(p) => self.degree_pattern(p, n),
            CheckKind::Parabolic => self.parabolic(),
            CheckKind::Coset => self.coset(n),
            CheckKind::AllPairs(bound) => self.all_pairs(bound, n),
            CheckKind::Nonnegativity => Ok(self.per_pair(n, |_, w, u, prod, found| {
                for (v, c) in prod.terms() {
                    if nonnegativity_violation(self.group, w, u, v, c) {
                        found.violation(vec![w, u, v]);
                    }
                }
            })),
            CheckKind::Cyclic => Ok(self.per_pair(n, |hecke, w, u, prod, found| {
                for (v, c) in prod.terms() {
                    if cyclic_violation(hecke, w, u, v, c) {
                        found.violation(vec![w, u, v]);
                    }
                }
            })),
            CheckKind::Inverse => Ok(self.per_pair(n, |hecke, w, u, prod, found| {
                if inverse_violation(hecke, w, u, prod) {
                    found.violation(vec![w, u]);
                }
            })),
            CheckKind::LengthAdditive => Ok(self.per_pair(n, |_, w, u, prod, found| {
                if length_additive_violation(self.group, w, u, prod) {
                    found.violation(vec![w, u]);
                }
            })),
            CheckKind::Associativity => self.associativity(n),
            CheckKind::KlWindow => self.kl_window(n),
            CheckKind::AWindow => self.a_window(n),
        }
    }

    fn suffix(&self, a: &str, b: &str, n: usize) -> Result<Outcome, VerifyError> {
        let group = self.group;
        let (wa, wb): (Word, Word) = (a.parse()?, b.parse()?);
        let elems = group.enumerate_up_to(n)?;
        let mut out = Outcome {
            scanned: elems.len() as u64,
            ..Outcome::default()
        };
        for p in [&wa, &wb] {
            if !group.is_reduced(p)? {
                out.notes
                    .push(format!("{p} is not reduced in this group; no element can end with it"));
                return Ok(out);
            }
        }
        let hits: Vec<Element> = elems
            .par_iter()
            .copied()
            .filter(|&w| ends_with(group, w, &wa) && ends_with(group, w, &wb))
            .collect();
        out.violation_count = hits.len() as u64;
        out.witnesses = hits
            .iter()
            .take(WITNESS_LIMIT)
            .map(|w| vec![spell(group, *w)])
            .collect();
        Ok(out)
    }

    fn sandwich(&self, alpha: Generator, min_len: usize, n: usize) -> Result<Outcome, VerifyError> {
        let group = self.group;
        let set = GenSet::of(&[Generator::S, alpha]);
        let middles: Vec<Element> = group
            .parabolic_elements(set)?
            .into_iter()
            .filter(|w| group.length(*w) >= min_len)
            .collect();
        let elems = group.enumerate_up_to(n)?;
        let xs: Vec<Element> = elems
            .iter()
            .copied()
            .filter(|x| group.right_descents(*x).intersection(set).is_empty())
            .collect();
        let ys: Vec<Element> = elems
            .iter()
            .copied()
            .filter(|y| group.left_descents(*y).intersection(set).is_empty())
            .collect();
        let parts: Vec<(Found, u64)> = xs
            .par_iter()
            .map(|&x| {
                let mut found = Found::default();
                let mut not_additive = 0;
                for &w in &middles {
                    for &y in &ys {
                        found.scanned += 1;
                        if !sandwich_holds(group, x, w, y) {
                            let total = group.length(x) + group.length(w) + group.length(y);
                            if group.length(group.multiply(group.multiply(x, w), y)) != total {
                                not_additive += 1;
                            }
                            found.violation(vec![x, w, y]);
                        }
                    }
                }
                (found, not_additive)
            })
            .collect();
        let not_additive: u64 = parts.iter().map(|p| p.1).sum();
        let mut out = Found::merge_all(parts.into_iter().map(|p| p.0).collect()).into_outcome(group);
        out.notes
            .push(format!("{} middle elements of length >= {min_len}", middles.len()));
        if out.violation_count > 0 {
            out.notes.push(format!(
                "{not_additive} of {} violations break length additivity; the rest break only descent transfer",
                out.violation_count
            ));
        }
        Ok(out)
    }

    fn degree_pattern(&self, p: DegreePattern, n: usize) -> Result<Outcome, VerifyError> {
        let group = self.group;
        let (a, b) = (factor(group, p.a)?, factor(group, p.b)?);
        let elems = group.enumerate_up_to(n)?;
        let xs: Vec<Element> = elems
            .iter()
            .copied()
            .filter(|x| p.right_of_x.holds(group.right_descents(*x)))
            .collect();
        let ys: Vec<Element> = elems
            .iter()
            .copied()
            .filter(|y| p.left_of_y.holds(group.left_descents(*y)))
            .collect();
        let mut jobs = Vec::with_capacity(xs.len() * ys.len());
        for &x in &xs {
            let left = group.multiply(x, a);
            for &y in &ys {
                jobs.push(PairJob {
                    x,
                    y,
                    left,
                    right: group.multiply(b, y),
                });
            }
        }
        let bound = p.bound.value(group.params());
        Ok(from_scan(
            group,
            scan::scan_pairs(&self.hecke, jobs, bound, self.memo),
            bound,
        ))
    }

    fn parabolic(&self) -> Result<Outcome, VerifyError> {
        let group = self.group;
        let members: Vec<Element> = group.parabolic_elements(SR)?;
        let w0 = group.longest_parabolic(SR)?;
        let set: BTreeSet<Element> = members.iter().copied().collect();
        let mut jobs = Vec::new();
        for &w in &members {
            for &u in &members {
                jobs.push(PairJob::plain(w, u));
            }
        }
        let stats = scan::scan_pairs(&self.hecke, jobs, None, self.memo);
        let mut found = Found::default();
        for &w in &members {
            for &u in &members {
                for v in parabolic_violation(group, &set, w0, w, u, &self.hecke.product(w, u)) {
                    found.violation(vec![w, u, v]);
                }
            }
        }
        let mut out = from_scan(group, stats, None);
        out.violation_count = found.count;
        out.witnesses = spell_all(group, &found.witnesses);
        let top = self.hecke.f_coeff(w0, w0, w0).degree();
        out.notes
            .push(format!("|W_sr| = {}, deg f(w_sr, w_sr, w_sr) = {top}", members.len()));
        Ok(out)
    }

    fn coset(&self, n: usize) -> Result<Outcome, VerifyError> {
        let group = self.group;
        let elems = group.enumerate_up_to(n)?;
        let split_x: Vec<(Element, usize)> = elems
            .iter()
            .map(|&x| (x, group.length(group.parabolic_decompose(x, SR, Side::Right).1)))
            .collect();
        let split_y: Vec<(Element, usize)> = elems
            .iter()
            .map(|&y| (y, group.length(group.parabolic_decompose(y, SR, Side::Left).1)))
            .collect();
        let mut jobs = Vec::new();
        for &(x, lw) in &split_x {
            for &(y, lu) in &split_y {
                if lw >= 1 && lu >= 1 && lw + lu >= 3 {
                    jobs.push(PairJob::plain(x, y));
                }
            }
        }
        let bound = Bound::MSr.value(group.params());
        Ok(from_scan(
            group,
            scan::scan_pairs(&self.hecke, jobs, bound, self.memo),
            bound,
        ))
    }

    fn all_pairs(&self, bound: Bound, n: usize) -> Result<Outcome, VerifyError> {
        let bound = bound.value(self.group.params());
        let s = scan::scan_pairs(&self.hecke, scan::all_pairs(self.group, n), bound, self.memo);
        Ok(from_scan(self.group, s, bound))
    }

    /// Runs `visit` on every product `T~_w T~_u` with `l(w), l(u) <= n`.
    fn per_pair<F>(&self, n: usize, visit: F) -> Outcome
    where
        F: Fn(&Hecke<'g, C>, Element, Element, &HeckeVector<XiPoly<C>>, &mut Found) + Sync,
    {
        let group = self.group;
        let elems = group.enumerate_up_to(n).expect("window within the length cap");
        let parts: Vec<Found> = elems
            .par_iter()
            .map(|&w| {
                let mut walker = LeftWalker::new(&self.hecke, w, self.memo);
                let mut found = Found::default();
                for &u in &elems {
                    let prod = walker.product(u);
                    found.scanned += 1;
                    found.degree(max_degree(&prod));
                    visit(&self.hecke, w, u, &prod, &mut found);
                }
                found
            })
            .collect();
        Found::merge_all(parts).into_outcome(group)
    }

    fn associativity(&self, n: usize) -> Result<Outcome, VerifyError> {
        let group = self.group;
        let elems = group.enumerate_up_to(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
        let picks: Vec<[Element; 3]> = (0..ASSOCIATIVITY_TRIPLES)
            .map(|_| [0, 1, 2].map(|_| *elems.choose(&mut rng).expect("window is non-empty")))
            .collect();
        let parts: Vec<Found> = picks
            .par_iter()
            .map(|&[a, b, c]| {
                let mut found = Found {
                    scanned: 1,
                    ..Found::default()
                };
                if associativity_violation(&self.hecke, a, b, c) {
                    found.violation(vec![a, b, c]);
                }
                found
            })
            .collect();
        let mut out = Found::merge_all(parts).into_outcome(group);
        out.notes.push(format!("seed {ASSOCIATIVITY_SEED:#x}"));
        Ok(out)
    }

    fn kl_window(&self, n: usize) -> Result<Outcome, VerifyError> {
        let group = self.group;
        let kl = &self.kl;
        let elems = group.enumerate_up_to(n)?;
        let parts: Vec<(Found, Vec<Vec<String>>)> = elems
            .par_iter()
            .map(|&w| {
                let mut found = Found::default();
                let mut tagged = Vec::new();
                let col = kl.column(w);
                let ctilde = kl.c_basis_normalized(w);
                for (&y, p) in col.iter() {
                    found.scanned += 1;
                    let d = p.degree().or_zero();
                    found.degree(d as u32);
                    if let Some(tag) = kl_entry_violation(group, w, y, p, &ctilde.coeff(y)) {
                        found.count += 1;
                        tagged.push(vec![tag.to_string(), spell(group, y), spell(group, w)]);
                    }
                }
                if ctilde.coeff(w) != HalfLaurent::one() {
                    found.count += 1;
                    tagged.push(vec!["triangular".to_string(), spell(group, w), spell(group, w)]);
                }
                (found, tagged)
            })
            .collect();
        let mut tagged: Vec<Vec<String>> = Vec::new();
        let mut founds = Vec::new();
        for (f, t) in parts {
            founds.push(f);
            tagged.extend(t);
        }
        let mut merged = Found::merge_all(founds);
        for g in Generator::ALL {
            let e = group.multiply_gen(group.neutral(), g, Side::Right);
            let expected = BTreeMap::from([(e, eta::<C>())]);
            if kl.h_coeffs(e, e) != expected {
                merged.count += 1;
                tagged.push(vec!["h".to_string(), g.to_string()]);
            }
        }
        tagged.sort();
        tagged.truncate(WITNESS_LIMIT);
        let mut out = merged.into_outcome(group);
        out.witnesses = tagged;
        out.notes
            .push("max_degree_seen and histogram refer to deg P_{y,w}".to_string());
        Ok(out)
    }

    fn a_window(&self, n: usize) -> Result<Outcome, VerifyError> {
        let group = self.group;
        let win = self.kl.a_window(n)?;
        let bound = Bound::Case.value(group.params());
        let mut out = Outcome {
            bound,
            scanned: (group.enumerate_up_to(n)?.len() as u64).pow(2),
            ..Outcome::default()
        };
        let mut bad = Vec::new();
        for (v, a) in win.iter() {
            let a = a.max(0) as u32;
            *out.histogram.entry(a).or_default() += 1;
            out.max_degree = out.max_degree.max(a);
            if bound.is_some_and(|b| a > b) {
                let (w, u) = win.attained_at(v).expect("every value has a witness");
                bad.push(vec![w, u, v]);
            }
        }
        out.violation_count = bad.len() as u64;
        bad.truncate(WITNESS_LIMIT);
        out.witnesses = spell_all(group, &bad);
        let top: Vec<Vec<Element>> = win
            .iter()
            .filter(|(_, a)| *a == win.max())
            .take(5)
            .map(|(v, _)| {
                let (w, u) = win.attained_at(v).unwrap();
                vec![w, u, v]
            })
            .collect();
        out.argmax = spell_all(group, &top);
        out.notes.push(format!(
            "values are lower bounds for a(v): only l(w), l(u) <= {n} are scanned"
        ));
        let asym = win.bar_asymmetric().count();
        out.notes.push(format!(
            "{asym} coefficients h_{{w,u,v}} not invariant under q^(1/2) -> q^(-1/2) (recorded, not asserted)"
        ));
        Ok(out)
    }
}

fn kl_entry_violation<C: Coefficient>(
    group: &Group,
    w: Element,
    y: Element,
    p: &crate::laurent::QPoly<C>,
    ctilde_y: &HalfLaurent<C>,
) -> Option<&'static str> {
    let gap = group.length(w) as i64 - group.length(y) as i64;
    if y == w {
        return (!p.is_one()).then_some("P_ww");
    }
    if 2 * p.degree().or_zero() > gap - 1 {
        return Some("degree");
    }
    if !group.bruhat_leq(y, w) || ctilde_y.degree() >= Degree::Finite(0) {
        return Some("triangular");
    }
    None
}

pub(super) fn replay<C: Coefficient>(group: &Group, spec: &CheckSpec, witness: &[String]) -> Result<bool, VerifyError> {
    let bad = || VerifyError::BadWitness(witness.to_vec());
    let elems = |skip: usize| -> Result<Vec<Element>, VerifyError> {
        witness[skip..]
            .iter()
            .map(|s| unspell(group, s).map_err(VerifyError::from))
            .collect()
    };
    let hecke = Hecke::<C>::new(group);
    let params = *group.params();
    Ok(match spec.kind {
        CheckKind::Suffix(a, b) => {
            let [w] = elems(0)?[..] else { return Err(bad()) };
            ends_with(group, w, &a.parse()?) && ends_with(group, w, &b.parse()?)
        }
        CheckKind::Sandwich { .. } => {
            let [x, w, y] = elems(0)?[..] else { return Err(bad()) };
            !sandwich_holds(group, x, w, y)
        }
        CheckKind::Degree(DegreePattern { bound, .. }) | CheckKind::AllPairs(bound) => {
            let [l, r, z] = elems(0)?[..] else { return Err(bad()) };
            let b = bound.value(&params).ok_or_else(bad)?;
            hecke.f_coeff(l, r, z).degree() > Degree::Finite(b as i64)
        }
        CheckKind::Coset => {
            let [l, r, z] = elems(0)?[..] else { return Err(bad()) };
            hecke.f_coeff(l, r, z).degree() > Degree::Finite(params.m_sr() as i64)
        }
        CheckKind::Parabolic => {
            let [w, u, v] = elems(0)?[..] else { return Err(bad()) };
            let members: BTreeSet<Element> = group.parabolic_elements(SR)?.into_iter().collect();
            let w0 = group.longest_parabolic(SR)?;
            parabolic_violation(group, &members, w0, w, u, &hecke.product(w, u)).contains(&v)
        }
        CheckKind::Nonnegativity => {
            let [w, u, v] = elems(0)?[..] else { return Err(bad()) };
            nonnegativity_violation(group, w, u, v, &hecke.f_coeff(w, u, v))
        }
        CheckKind::Cyclic => {
            let [w, u, v] = elems(0)?[..] else { return Err(bad()) };
            cyclic_violation(&hecke, w, u, v, &hecke.f_coeff(w, u, v))
        }
        CheckKind::Inverse => {
            let [w, u] = elems(0)?[..] else { return Err(bad()) };
            inverse_violation(&hecke, w, u, &hecke.product(w, u))
        }
        CheckKind::Associativity => {
            let [a, b, c] = elems(0)?[..] else { return Err(bad()) };
            associativity_violation(&hecke, a, b, c)
        }
        CheckKind::LengthAdditive => {
            let [w, u] = elems(0)?[..] else { return Err(bad()) };
            length_additive_violation(group, w, u, &hecke.product(w, u))
        }
        CheckKind::KlWindow => {
            let kl = KlTable::<C>::new(group);
            match witness.first().map(String::as_str) {
                Some("h") => {
                    let g = witness.get(1).and_then(|s| s.chars().next()).ok_or_else(bad)?;
                    let e = group.multiply_gen(group.neutral(), Generator::from_letter(g)?, Side::Right);
                    kl.h_coeffs(e, e) != BTreeMap::from([(e, eta::<C>())])
                }
                Some(_) => {
                    let [y, w] = elems(1)?[..] else { return Err(bad()) };
                    let ctilde = kl.c_basis_normalized(w);
                    if y == w && ctilde.coeff(w) != HalfLaurent::one() {
                        return Ok(true);
                    }
                    kl_entry_violation(group, w, y, &kl.kl_poly(y, w), &ctilde.coeff(y)).is_some()
                }
                None => return Err(bad()),
            }
        }
        CheckKind::AWindow => {
            let [w, u, v] = elems(0)?[..] else { return Err(bad()) };
            let kl = KlTable::<C>::new(group);
            let b = Bound::Case.value(&params).ok_or_else(bad)?;
            let h = kl.h_coeffs(w, u).remove(&v).unwrap_or_default();
            h.degree() > Degree::Finite(b as i64)
        }
    })
}
