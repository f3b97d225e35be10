//! Hecke algebra multiplication in the normalized standard basis
//! `T~_w = q^(-l(w)/2) T_w`.
//!
//! Right multiplication by a generator is
//!
//! ```text
//! T~_w T~_g = T~_{wg}                 if l(wg) > l(w)
//!           = xi T~_w + T~_{wg}       otherwise
//! ```
//!
//! with `xi = q^(1/2) - q^(-1/2)`. Products `T~_w T~_u` are built by applying
//! this rule along the normal form of `u`; the coefficient of `T~_v` is the
//! structure constant `f_{w,u,v}`, a polynomial in `xi`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{AddAssign, Mul, SubAssign};
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::{One, Zero};

use crate::coxeter::{Element, Generator, Group, View};
use crate::laurent::{Coefficient, HalfLaurent, XiPoly};

/// Coefficient ring for [`HeckeVector`]: anything containing `xi`.
pub trait HeckeCoefficient:
    Clone + Debug + PartialEq + Zero + One + Send + Sync + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
    fn mul_xi(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl<C: Coefficient> HeckeCoefficient for XiPoly<C> {
    fn mul_xi(&self) -> Self {
        XiPoly::mul_xi(self)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

impl<C: Coefficient> HeckeCoefficient for HalfLaurent<C> {
    fn mul_xi(&self) -> Self {
        HalfLaurent::mul_xi(self)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// Finite linear combination of basis elements indexed by group elements.
///
/// Terms iterate in ShortLex order of the index, so anything derived from a
/// vector is deterministic.
#[derive(Clone, PartialEq, Debug)]
pub struct HeckeVector<K> {
    terms: BTreeMap<Element, K>,
}

impl<K: HeckeCoefficient> Default for HeckeVector<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: HeckeCoefficient> HeckeVector<K> {
    pub fn zero() -> Self {
        HeckeVector { terms: BTreeMap::new() }
    }

    /// The single basis element indexed by `w`.
    pub fn basis(w: Element) -> Self {
        Self::term(w, K::one())
    }

    pub fn term(w: Element, c: K) -> Self {
        let mut v = Self::zero();
        v.add_term(w, &c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `w`, or zero.
    pub fn coeff(&self, w: Element) -> K {
        self.terms.get(&w).cloned().unwrap_or_else(K::zero)
    }

    pub fn get(&self, w: Element) -> Option<&K> {
        self.terms.get(&w)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Element, &K)> + '_ {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.terms.keys().copied()
    }

    pub fn add_term(&mut self, w: Element, c: &K) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(K::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn sub_term(&mut self, w: Element, c: &K) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(K::zero);
        *slot -= c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &HeckeVector<K>, c: &K) {
        for (w, x) in &other.terms {
            self.add_term(*w, &x.times(c));
        }
    }

    pub fn map_coeffs<L: HeckeCoefficient>(&self, f: impl Fn(&K) -> L) -> HeckeVector<L> {
        let mut out = HeckeVector::zero();
        for (w, c) in &self.terms {
            out.add_term(*w, &f(c));
        }
        out
    }
}

impl<'a, K: HeckeCoefficient> AddAssign<&'a HeckeVector<K>> for HeckeVector<K> {
    fn add_assign(&mut self, rhs: &'a HeckeVector<K>) {
        for (w, c) in &rhs.terms {
            self.add_term(*w, c);
        }
    }
}

impl<'a, K: HeckeCoefficient> SubAssign<&'a HeckeVector<K>> for HeckeVector<K> {
    fn sub_assign(&mut self, rhs: &'a HeckeVector<K>) {
        for (w, c) in &rhs.terms {
            self.sub_term(*w, c);
        }
    }
}

fn longest_in<K>(v: &HeckeVector<K>, group: &Group) -> usize {
    v.terms.keys().next_back().map(|w| group.length(*w)).unwrap_or(0)
}

type ProductMemo<C> = DashMap<(Element, Element), Arc<HeckeVector<XiPoly<C>>>>;

/// The Hecke algebra of a [`Group`], with optional memoization of products.
pub struct Hecke<'g, C: Coefficient> {
    group: &'g Group,
    memo: Option<ProductMemo<C>>,
}

impl<'g, C: Coefficient> Hecke<'g, C> {
    pub fn new(group: &'g Group) -> Self {
        Hecke { group, memo: None }
    }

    /// Memoizes every intermediate `T~_w T~_p` for prefixes `p` of right
    /// factors; a pair scan that walks right factors in ShortLex order then
    /// does one generator step per pair.
    pub fn with_memo(group: &'g Group) -> Self {
        Hecke {
            group,
            memo: Some(DashMap::new()),
        }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn memo_entries(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.len())
    }

    /// `v T~_g`, extended linearly.
    pub fn mul_gen_right<K: HeckeCoefficient>(&self, v: &HeckeVector<K>, g: Generator) -> HeckeVector<K> {
        self.group
            .ensure_length(longest_in(v, self.group) + 1)
            .unwrap_or_else(|e| panic!("{e}"));
        let view = self.group.view();
        mul_gen_in(&view, v, g)
    }

    /// `v T~_u`.
    pub fn mul_basis_right<K: HeckeCoefficient>(&self, v: &HeckeVector<K>, u: Element) -> HeckeVector<K> {
        let word = self.group.word(u);
        self.group
            .ensure_length(longest_in(v, self.group) + word.len())
            .unwrap_or_else(|e| panic!("{e}"));
        let view = self.group.view();
        word.gens().iter().fold(v.clone(), |acc, g| mul_gen_in(&view, &acc, *g))
    }

    /// `a b` for arbitrary vectors in the normalized standard basis.
    pub fn multiply<K: HeckeCoefficient>(&self, a: &HeckeVector<K>, b: &HeckeVector<K>) -> HeckeVector<K> {
        let mut out = HeckeVector::zero();
        for (u, c) in b.terms() {
            out.add_scaled(&self.mul_basis_right(a, u), c);
        }
        out
    }

    /// `T~_w T~_u = sum_v f_{w,u,v} T~_v`.
    pub fn product(&self, w: Element, u: Element) -> Arc<HeckeVector<XiPoly<C>>> {
        let group = self.group;
        group
            .ensure_length(group.length(w) + group.length(u))
            .unwrap_or_else(|e| panic!("{e}"));
        let Some(memo) = &self.memo else {
            return Arc::new(self.mul_basis_right(&HeckeVector::basis(w), u));
        };
        if let Some(hit) = memo.get(&(w, u)) {
            return Arc::clone(&hit);
        }
        let view = group.view();
        let word = view.word(u).clone();
        // prefixes[k] is the element spelled by the first k letters of u
        let mut prefixes = Vec::with_capacity(word.len() + 1);
        prefixes.push(Element::IDENTITY);
        for g in word.gens() {
            prefixes.push(view.mul_right(*prefixes.last().unwrap(), *g));
        }
        let mut start = 0;
        let mut acc = Arc::new(HeckeVector::basis(w));
        for k in (1..word.len()).rev() {
            if let Some(hit) = memo.get(&(w, prefixes[k])) {
                start = k;
                acc = Arc::clone(&hit);
                break;
            }
        }
        for k in start..word.len() {
            let next = Arc::new(mul_gen_in(&view, &acc, word.gens()[k]));
            memo.insert((w, prefixes[k + 1]), Arc::clone(&next));
            acc = next;
        }
        acc
    }

    /// Structure constant `f_{w,u,v}`.
    pub fn f_coeff(&self, w: Element, u: Element, v: Element) -> XiPoly<C> {
        self.product(w, u).coeff(v)
    }

    /// `max_v deg f_{w,u,v}`.
    pub fn max_f_degree(&self, w: Element, u: Element) -> u32 {
        max_degree(&self.product(w, u))
    }
}

/// Largest xi-degree among the coefficients; 0 for constants.
pub fn max_degree<C: Coefficient>(v: &HeckeVector<XiPoly<C>>) -> u32 {
    v.terms().map(|(_, c)| c.degree().or_zero() as u32).max().unwrap_or(0)
}

fn mul_gen_in<K: HeckeCoefficient>(view: &View<'_>, v: &HeckeVector<K>, g: Generator) -> HeckeVector<K> {
    let mut out = HeckeVector::zero();
    for (w, c) in v.terms() {
        let wg = view.mul_right(w, g);
        if view.right_descents(w).contains(g) {
            out.add_term(w, &c.mul_xi());
        }
        out.add_term(wg, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{GroupParams, Side};
    use crate::laurent::half_to_xi;
    use proptest::prelude::*;

    type X = XiPoly<i64>;
    type H = HalfLaurent<i64>;

    fn group(a: u32, b: u32) -> Group {
        Group::new(GroupParams::new(a, b).unwrap())
    }

    fn xi(coeffs: &[i64]) -> X {
        X::from_coeffs(coeffs.to_vec())
    }

    /// Independent route: multiply in the unnormalized basis `T_w` with
    /// `T_x T_g = T_{xg}` or `(q - 1) T_x + q T_{xg}`, then rescale by
    /// `q^((l(v) - l(w) - l(u)) / 2)` and rewrite in xi.
    fn t_basis_oracle(g: &Group, w: Element, u: Element) -> BTreeMap<Element, X> {
        let mut v: BTreeMap<Element, H> = BTreeMap::new();
        v.insert(w, H::one());
        for gen in g.word(u).gens() {
            let mut next: BTreeMap<Element, H> = BTreeMap::new();
            for (x, c) in &v {
                let xg = g.multiply_gen(*x, *gen, Side::Right);
                if g.length(xg) > g.length(*x) {
                    *next.entry(xg).or_default() += c;
                } else {
                    let q_minus_1 = H::from_terms([(2, 1), (0, -1)]);
                    *next.entry(*x).or_default() += &(&q_minus_1 * c);
                    *next.entry(xg).or_default() += &c.shift(2);
                }
            }
            next.retain(|_, c| !c.is_zero());
            v = next;
        }
        let (lw, lu) = (g.length(w) as i32, g.length(u) as i32);
        v.into_iter()
            .map(|(x, c)| {
                let scaled = c.shift(g.length(x) as i32 - lw - lu);
                (x, half_to_xi(&scaled).expect("structure constants are xi-polynomials"))
            })
            .collect()
    }

    fn as_map(v: &HeckeVector<X>) -> BTreeMap<Element, X> {
        v.terms().map(|(w, c)| (w, c.clone())).collect()
    }

    #[test]
    fn mul_gen_right_examples() {
        let g = group(7, 3);
        let h = Hecke::<i64>::new(&g);
        let e = g.neutral();
        let s = g.parse("s").unwrap();
        let st = g.parse("st").unwrap();
        assert_eq!(
            h.mul_gen_right(&HeckeVector::<X>::basis(e), Generator::S),
            HeckeVector::basis(s)
        );
        let ss = h.mul_gen_right(&HeckeVector::<X>::basis(s), Generator::S);
        assert_eq!(as_map(&ss), BTreeMap::from([(e, X::one()), (s, X::xi())]));
        let stt = h.mul_gen_right(&HeckeVector::<X>::basis(st), Generator::T);
        assert_eq!(as_map(&stt), BTreeMap::from([(s, X::one()), (st, X::xi())]));
    }

    #[test]
    fn product_examples() {
        let g = group(7, 3);
        let h = Hecke::<i64>::new(&g);
        let e = g.neutral();
        let u = g.parse("srt").unwrap();
        assert_eq!(as_map(&h.product(e, u)), BTreeMap::from([(u, X::one())]));
        let s = g.parse("s").unwrap();
        assert_eq!(as_map(&h.product(s, s)), BTreeMap::from([(e, X::one()), (s, X::xi())]));
        let st = g.parse("st").unwrap();
        let ts = g.parse("ts").unwrap();
        let sts = g.parse("sts").unwrap();
        let expected = BTreeMap::from([(e, X::one()), (s, X::xi()), (sts, X::xi())]);
        assert_eq!(as_map(&h.product(st, ts)), expected);
        assert_eq!(t_basis_oracle(&g, st, ts), expected);
    }

    #[test]
    fn f_coeff_examples() {
        let g = group(7, 3);
        let h = Hecke::<i64>::new(&g);
        let w = g.parse("tsr").unwrap();
        assert_eq!(h.f_coeff(w, g.neutral(), w), X::one());
        let s = g.parse("s").unwrap();
        assert_eq!(h.f_coeff(s, s, s), X::xi());
        let st = g.parse("st").unwrap();
        let ts = g.parse("ts").unwrap();
        assert_eq!(h.f_coeff(st, ts, g.neutral()), X::one());
    }

    #[test]
    fn max_degree_examples() {
        let g = group(5, 4);
        let h = Hecke::<i64>::new(&g);
        let u = g.parse("rts").unwrap();
        assert_eq!(h.max_f_degree(g.neutral(), u), 0);
        let s = g.parse("s").unwrap();
        assert_eq!(h.max_f_degree(s, s), 1);
        let w_sr = g
            .longest_parabolic(crate::coxeter::GenSet::of(&[Generator::S, Generator::R]))
            .unwrap();
        assert_eq!(h.max_f_degree(w_sr, w_sr), 5);
        // the degree-5 term sits on w_sr itself
        assert_eq!(h.f_coeff(w_sr, w_sr, w_sr).degree(), crate::laurent::Degree::Finite(5));
    }

    #[test]
    fn agrees_with_t_basis_oracle() {
        let g = group(7, 3);
        let h = Hecke::<i64>::new(&g);
        let elems = g.enumerate_up_to(4).unwrap();
        for &w in &elems {
            for &u in &elems {
                assert_eq!(
                    as_map(&h.product(w, u)),
                    t_basis_oracle(&g, w, u),
                    "{} * {}",
                    g.name(w),
                    g.name(u)
                );
            }
        }
    }

    #[test]
    fn memo_matches_direct() {
        let g = group(5, 4);
        let plain = Hecke::<i64>::new(&g);
        let memo = Hecke::<i64>::with_memo(&g);
        let elems = g.enumerate_up_to(4).unwrap();
        for &w in &elems {
            for &u in &elems {
                assert_eq!(plain.product(w, u), memo.product(w, u));
            }
        }
        assert!(memo.memo_entries() > 0);
    }

    #[test]
    fn length_additive_products_collapse() {
        let g = group(7, 3);
        let h = Hecke::<i64>::new(&g);
        let w = g.parse("srt").unwrap();
        let u = g.parse("srs").unwrap();
        assert!(g.is_length_additive(w, u));
        assert_eq!(*h.product(w, u), HeckeVector::basis(g.multiply(w, u)));
        assert_eq!(xi(&[0, 1]), X::xi());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn associativity(a in 0usize..64, b in 0usize..64, c in 0usize..64) {
            let g = group(7, 3);
            let h = Hecke::<i64>::new(&g);
            let elems = g.enumerate_up_to(5).unwrap();
            let (x, y, z) = (elems[a % elems.len()], elems[b % elems.len()], elems[c % elems.len()]);
            let left = h.mul_basis_right(&h.product(x, y), z);
            let right = h.multiply(&HeckeVector::basis(x), &h.product(y, z));
            prop_assert_eq!(left, right);
        }
    }
}
