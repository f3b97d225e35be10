//! Kazhdan-Lusztig polynomials, the C basis, and the structure constants
//! `h_{w,u,v}` of `C_w C_u = sum_v h_{w,u,v} C_v`.
//!
//! `C_w = q^(-l(w)/2) sum_{y <= w} P_{y,w} T_y`. Polynomials are computed one
//! Bruhat interval at a time: picking `g` in `R(w)` and `v = wg`, every
//! `P_{y,w}` comes from the standard right-descent recursion
//!
//! ```text
//! P_{y,w} = q^(1-c) P_{yg,v} + q^c P_{y,v}
//!           - sum_{z < v, zg < z} mu(z,v) q^((l(w)-l(z))/2) P_{y,z}
//! ```
//!
//! with `c = 1` if `yg < y` and `c = 0` otherwise.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::coxeter::{CoxeterError, Element, Group, Side};
use crate::hecke::{Hecke, HeckeVector};
use crate::laurent::{Coefficient, Degree, HalfLaurent, QPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlError {
    #[error("{y} is not strictly below {w} in the Bruhat order")]
    NotComparable { y: String, w: String },
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// `P_{y,w}` for every `y <= w`.
pub type Column<C> = BTreeMap<Element, QPoly<C>>;

/// Memoized KL polynomials over one group.
///
/// Safe to share between threads. Two threads asking for the same interval
/// may both compute it; the results are equal and the first one is kept.
pub struct KlTable<'g, C: Coefficient> {
    group: &'g Group,
    columns: DashMap<Element, Arc<Column<C>>>,
    c_tilde: DashMap<Element, Arc<HeckeVector<HalfLaurent<C>>>>,
}

impl<'g, C: Coefficient> KlTable<'g, C> {
    pub fn new(group: &'g Group) -> Self {
        KlTable {
            group,
            columns: DashMap::new(),
            c_tilde: DashMap::new(),
        }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    /// Number of memoized intervals.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// All `P_{y,w}` with `y <= w`, keyed by `y`.
    pub fn column(&self, w: Element) -> Arc<Column<C>> {
        if let Some(hit) = self.columns.get(&w) {
            return Arc::clone(&hit);
        }
        let col = Arc::new(self.compute_column(w));
        Arc::clone(&self.columns.entry(w).or_insert(col))
    }

    fn compute_column(&self, w: Element) -> Column<C> {
        let group = self.group;
        if w.is_identity() {
            return BTreeMap::from([(w, QPoly::one())]);
        }
        let g = group.word(w).last().expect("non-identity element has a letter");
        let v = group.multiply_gen(w, g, Side::Right);
        let col_v = self.column(v);
        let lw = group.length(w);

        let mut corrections = Vec::new();
        for (&z, p) in col_v.iter() {
            if z == v || !group.right_descents(z).contains(g) {
                continue;
            }
            let m = mu_of(p, group.length(v) - group.length(z));
            if !m.is_zero() {
                let shift = (lw - group.length(z)) / 2;
                corrections.push((self.column(z), QPoly::constant(m).shift(shift)));
            }
        }

        // y <= w iff y <= v or yg <= v
        let mut below: BTreeSet<Element> = BTreeSet::new();
        for &y in col_v.keys() {
            below.insert(y);
            below.insert(group.multiply_gen(y, g, Side::Right));
        }
        let zero = QPoly::zero();
        let mut out = BTreeMap::new();
        for y in below {
            let yg = group.multiply_gen(y, g, Side::Right);
            let p_yg = col_v.get(&yg).unwrap_or(&zero);
            let p_y = col_v.get(&y).unwrap_or(&zero);
            let mut p = if group.length(yg) < group.length(y) {
                p_yg.clone() + p_y.shift(1)
            } else {
                p_yg.shift(1) + p_y.clone()
            };
            for (col_z, factor) in &corrections {
                if let Some(p_yz) = col_z.get(&y) {
                    p -= &(factor * p_yz);
                }
            }
            debug_assert!(!p.is_zero(), "P_{{y,w}} vanished on a Bruhat interval");
            out.insert(y, p);
        }
        out
    }

    /// `P_{y,w}`; zero unless `y <= w`.
    pub fn kl_poly(&self, y: Element, w: Element) -> QPoly<C> {
        self.column(w).get(&y).cloned().unwrap_or_else(QPoly::zero)
    }

    /// Coefficient of `q^((l(w)-l(y)-1)/2)` in `P_{y,w}`, zero when the
    /// length difference is even.
    pub fn mu(&self, y: Element, w: Element) -> Result<C, KlError> {
        let col = self.column(w);
        match col.get(&y) {
            Some(p) if y != w => Ok(mu_of(p, self.group.length(w) - self.group.length(y))),
            _ => Err(KlError::NotComparable {
                y: self.group.name(y),
                w: self.group.name(w),
            }),
        }
    }

    /// `C_w` in the unnormalized basis `T_y`.
    pub fn c_basis(&self, w: Element) -> HeckeVector<HalfLaurent<C>> {
        let lw = self.group.length(w) as i32;
        let mut out = HeckeVector::zero();
        for (&y, p) in self.column(w).iter() {
            out.add_term(y, &p.to_half().shift(-lw));
        }
        out
    }

    /// `C_w` in the normalized basis `T~_y`; unitriangular with leading
    /// term `T~_w`.
    pub fn c_basis_normalized(&self, w: Element) -> Arc<HeckeVector<HalfLaurent<C>>> {
        if let Some(hit) = self.c_tilde.get(&w) {
            return Arc::clone(&hit);
        }
        let lw = self.group.length(w) as i32;
        let mut out = HeckeVector::zero();
        for (&y, p) in self.column(w).iter() {
            out.add_term(y, &p.to_half().shift(self.group.length(y) as i32 - lw));
        }
        let out = Arc::new(out);
        Arc::clone(&self.c_tilde.entry(w).or_insert(out))
    }

    /// Rewrites a vector given in the `T~` basis in the C basis.
    ///
    /// Peels off the longest term each time; the remainder of `C_v` is
    /// strictly shorter than `v`, so each step removes the current maximum.
    pub fn to_c_basis(&self, mut v: HeckeVector<HalfLaurent<C>>) -> BTreeMap<Element, HalfLaurent<C>> {
        let mut out = BTreeMap::new();
        loop {
            let Some((top, c)) = v.terms().next_back().map(|(t, c)| (t, c.clone())) else {
                break;
            };
            v.add_scaled(&self.c_basis_normalized(top).map_coeffs(|x| -x.clone()), &c);
            debug_assert!(v.get(top).is_none());
            out.insert(top, c);
        }
        out
    }

    /// `h_{w,u,v}` for every `v` with a non-zero coefficient.
    pub fn h_coeffs(&self, w: Element, u: Element) -> BTreeMap<Element, HalfLaurent<C>> {
        self.group
            .ensure_length(self.group.length(w) + self.group.length(u))
            .unwrap_or_else(|e| panic!("{e}"));
        let hecke = Hecke::<C>::new(self.group);
        let prod = hecke.multiply(&self.c_basis_normalized(w), &self.c_basis_normalized(u));
        self.to_c_basis(prod)
    }

    /// `a_N(v)` for every `v` reached by some `h_{w,u,v}` with
    /// `l(w), l(u) <= n`.
    ///
    /// Each value is a lower bound for `a(v)`. The outer loop runs on the
    /// current rayon pool.
    pub fn a_window(&self, n: usize) -> Result<AWindow, KlError> {
        let group = self.group;
        let elems = group.enumerate_up_to(n)?;
        group.ensure_length(2 * n)?;
        let hecke = Hecke::<C>::new(group);

        let partial: Vec<AWindow> = elems
            .par_iter()
            .map(|&w| {
                let mut acc = AWindow::empty(n);
                // C~_w T~_y for every y, walking normal forms by prefix
                let mut right: HashMap<Element, HeckeVector<HalfLaurent<C>>> = HashMap::new();
                right.insert(Element::IDENTITY, (*self.c_basis_normalized(w)).clone());
                for &y in elems.iter().skip(1) {
                    let g = group.word(y).last().expect("non-identity");
                    let parent = group.multiply_gen(y, g, Side::Right);
                    let next = hecke.mul_gen_right(&right[&parent], g);
                    right.insert(y, next);
                }
                for &u in &elems {
                    let mut prod = HeckeVector::zero();
                    for (y, c) in self.c_basis_normalized(u).terms() {
                        prod.add_scaled(&right[&y], c);
                    }
                    for (v, h) in self.to_c_basis(prod) {
                        acc.record(w, u, v, &h);
                    }
                }
                acc
            })
            .collect();

        let mut out = AWindow::empty(n);
        for part in partial {
            out.merge(part);
        }
        Ok(out)
    }

    /// `a_N(v)`; see [`KlTable::a_window`].
    pub fn a_windowed(&self, v: Element, n: usize) -> Result<i64, KlError> {
        Ok(self.a_window(n)?.get(v).unwrap_or(0))
    }
}

fn mu_of<C: Coefficient>(p: &QPoly<C>, length_gap: usize) -> C {
    if length_gap.is_multiple_of(2) {
        C::zero()
    } else {
        p.coeff((length_gap - 1) / 2)
    }
}

/// Windowed estimate of the a-function: for each `v`, the largest
/// `q^(1/2)`-degree of `h_{w,u,v}` over `l(w), l(u) <= cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AWindow {
    cap: usize,
    values: BTreeMap<Element, i64>,
    /// Least `(w, u)` attaining each value.
    attained: BTreeMap<Element, (Element, Element)>,
    /// Triples whose `h` is not invariant under `q^(1/2) -> q^(-1/2)`.
    bar_asymmetric: BTreeSet<(Element, Element, Element)>,
}

impl AWindow {
    fn empty(cap: usize) -> AWindow {
        AWindow {
            cap,
            values: BTreeMap::new(),
            attained: BTreeMap::new(),
            bar_asymmetric: BTreeSet::new(),
        }
    }

    fn record<C: Coefficient>(&mut self, w: Element, u: Element, v: Element, h: &HalfLaurent<C>) {
        if let Degree::Finite(d) = h.degree() {
            self.offer(v, d, (w, u));
        }
        if h.bar() != *h {
            self.bar_asymmetric.insert((w, u, v));
        }
    }

    fn offer(&mut self, v: Element, d: i64, pair: (Element, Element)) {
        let better = match self.values.get(&v) {
            None => true,
            Some(&cur) => d > cur || (d == cur && pair < self.attained[&v]),
        };
        if better {
            self.values.insert(v, d);
            self.attained.insert(v, pair);
        }
    }

    fn merge(&mut self, other: AWindow) {
        for (v, d) in other.values {
            self.offer(v, d, other.attained[&v]);
        }
        self.bar_asymmetric.extend(other.bar_asymmetric);
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&self, v: Element) -> Option<i64> {
        self.values.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, i64)> + '_ {
        self.values.iter().map(|(v, d)| (*v, *d))
    }

    /// Least `(w, u)` with `deg h_{w,u,v} = a_N(v)`.
    pub fn attained_at(&self, v: Element) -> Option<(Element, Element)> {
        self.attained.get(&v).copied()
    }

    pub fn max(&self) -> i64 {
        self.values.values().copied().max().unwrap_or(0)
    }

    pub fn bar_asymmetric(&self) -> impl Iterator<Item = (Element, Element, Element)> + '_ {
        self.bar_asymmetric.iter().copied()
    }
}
