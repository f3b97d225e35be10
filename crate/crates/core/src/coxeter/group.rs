use std::collections::HashMap;

use parking_lot::{RwLock, RwLockReadGuard};

use super::{CoxeterError, GenSet, Generator, GroupParams, ParabolicLabel, Side, Word};
use crate::word_problem::{ReductionCache, WordError};

/// Default cap on element length for the enumerated table.
pub const DEFAULT_MAX_WORD_LENGTH: usize = 20;

const UNKNOWN: u32 = u32::MAX;

/// Handle to an element of a [`Group`].
///
/// Elements are interned: each is identified by its index in the group's
/// table, and the table is built layer by layer with every layer sorted
/// lexicographically, so comparing handles compares normal forms in
/// ShortLex order. Handles are only meaningful for the group that issued
/// them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone)]
struct Entry {
    word: Word,
    left: GenSet,
    right: GenSet,
    lmul: [u32; 3],
    rmul: [u32; 3],
    inverse: u32,
}

struct Table {
    entries: Vec<Entry>,
    by_word: HashMap<Word, u32>,
    /// `layer_start[n]` is the first index of length `n`; the last entry is
    /// one past the end of the longest complete layer.
    layer_start: Vec<usize>,
}

impl Table {
    fn top_length(&self) -> usize {
        self.layer_start.len() - 2
    }
}

/// A rank-3 Coxeter group with a lazily enumerated Cayley table.
///
/// The table grows one length layer at a time, on demand, up to
/// `max_length`. All queries are safe from many threads; growth takes a
/// write lock.
pub struct Group {
    params: GroupParams,
    cache: ReductionCache,
    max_length: usize,
    table: RwLock<Table>,
}

impl Group {
    pub fn new(params: GroupParams) -> Group {
        Group::with_max_length(params, DEFAULT_MAX_WORD_LENGTH)
    }

    pub fn with_max_length(params: GroupParams, max_length: usize) -> Group {
        Group::with_cache(ReductionCache::new(params), max_length)
    }

    /// Uses a (possibly preloaded) reduction cache.
    pub fn with_cache(cache: ReductionCache, max_length: usize) -> Group {
        let identity = Entry {
            word: Word::new(),
            left: GenSet::EMPTY,
            right: GenSet::EMPTY,
            lmul: [UNKNOWN; 3],
            rmul: [UNKNOWN; 3],
            inverse: 0,
        };
        let mut by_word = HashMap::new();
        by_word.insert(Word::new(), 0);
        Group {
            params: *cache.params(),
            cache,
            max_length,
            table: RwLock::new(Table {
                entries: vec![identity],
                by_word,
                layer_start: vec![0, 1],
            }),
        }
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn cache(&self) -> &ReductionCache {
        &self.cache
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Enumerates every element of length `<= n`.
    pub fn ensure_length(&self, n: usize) -> Result<(), CoxeterError> {
        if n > self.max_length {
            return Err(CoxeterError::LengthCap {
                length: n,
                cap: self.max_length,
            });
        }
        if self.table.read().top_length() >= n {
            return Ok(());
        }
        let mut table = self.table.write();
        while table.top_length() < n {
            self.grow(&mut table);
        }
        Ok(())
    }

    fn grow(&self, table: &mut Table) {
        let top = table.top_length();
        let (lo, hi) = (table.layer_start[top], table.layer_start[top + 1]);

        // Every element one longer is `v g` with `g` not a right descent of `v`.
        // Runs under the write lock, so no rayon work may be spawned here.
        let mut extensions: Vec<(u32, Generator, Word)> = Vec::new();
        for v in lo..hi {
            let e = &table.entries[v];
            for g in Generator::ALL {
                if !e.right.contains(g) {
                    let nf = self.cache.extend(&e.word, g).expect("layer length within packed range");
                    extensions.push((v as u32, g, nf));
                }
            }
        }

        let mut words: Vec<Word> = extensions.iter().map(|(_, _, nf)| nf.clone()).collect();
        words.sort();
        words.dedup();
        let base = table.entries.len();
        let descents: Vec<(GenSet, GenSet)> = words
            .iter()
            .map(|w| self.cache.descents(w).expect("normal forms are reduced"))
            .collect();
        for (i, (w, (left, right))) in words.iter().zip(descents).enumerate() {
            debug_assert_eq!(w.len(), top + 1);
            table.by_word.insert(w.clone(), (base + i) as u32);
            table.entries.push(Entry {
                word: w.clone(),
                left,
                right,
                lmul: [UNKNOWN; 3],
                rmul: [UNKNOWN; 3],
                inverse: UNKNOWN,
            });
        }
        table.layer_start.push(base + words.len());

        let mut some_parent = vec![(0u32, Generator::S); words.len()];
        for (v, g, nf) in &extensions {
            let u = table.by_word[nf];
            table.entries[*v as usize].rmul[g.index()] = u;
            table.entries[u as usize].rmul[g.index()] = *v;
            some_parent[u as usize - base] = (*v, *g);
        }
        for u in base..table.entries.len() {
            let left = table.entries[u].left;
            for g in left.iter() {
                let mut w = Word::from_gens(vec![g]);
                w = w.concat(&table.entries[u].word);
                let nf = self.cache.normal_form(&w).expect("within packed range");
                let v = table.by_word[&nf];
                table.entries[u].lmul[g.index()] = v;
                table.entries[v as usize].lmul[g.index()] = u as u32;
            }
        }
        for u in base..table.entries.len() {
            // u = v g, so u^-1 = g v^-1
            let (v, g) = some_parent[u - base];
            let v_inv = table.entries[v as usize].inverse;
            let inv = table.entries[v_inv as usize].lmul[g.index()];
            debug_assert_ne!(inv, UNKNOWN);
            table.entries[u].inverse = inv;
        }
    }

    /// Read-only view of the current table, for tight loops.
    ///
    /// Only elements already enumerated may be queried through a view, and
    /// the table cannot grow while a view is alive on the same thread.
    pub fn view(&self) -> View<'_> {
        View {
            table: self.table.read(),
        }
    }

    /// Number of elements enumerated so far.
    pub fn enumerated(&self) -> usize {
        self.table.read().entries.len()
    }

    pub fn neutral(&self) -> Element {
        Element::IDENTITY
    }

    pub fn length(&self, w: Element) -> usize {
        self.view().length(w)
    }

    /// ShortLex normal form.
    pub fn word(&self, w: Element) -> Word {
        self.view().word(w).clone()
    }

    /// Normal form as a string; the neutral element is the empty string.
    pub fn name(&self, w: Element) -> String {
        self.view().word(w).to_string()
    }

    pub fn descents(&self, w: Element, side: Side) -> GenSet {
        let view = self.view();
        match side {
            Side::Left => view.left_descents(w),
            Side::Right => view.right_descents(w),
        }
    }

    pub fn left_descents(&self, w: Element) -> GenSet {
        self.descents(w, Side::Left)
    }

    pub fn right_descents(&self, w: Element) -> GenSet {
        self.descents(w, Side::Right)
    }

    /// `g w` or `w g`.
    ///
    /// # Panics
    ///
    /// If the product is longer than the group's length cap.
    pub fn multiply_gen(&self, w: Element, g: Generator, side: Side) -> Element {
        {
            let view = self.view();
            if let Some(x) = view.try_mul(w, g, side) {
                return x;
            }
        }
        let len = self.length(w);
        self.ensure_length(len + 1).unwrap_or_else(|e| panic!("{e}"));
        self.view().try_mul(w, g, side).expect("table grown past the product")
    }

    /// Group product `w u`.
    pub fn multiply(&self, w: Element, u: Element) -> Element {
        let word = self.word(u);
        word.gens()
            .iter()
            .fold(w, |acc, g| self.multiply_gen(acc, *g, Side::Right))
    }

    pub fn inverse(&self, w: Element) -> Element {
        self.view().inverse(w)
    }

    /// Element named by an arbitrary word, by walking the Cayley table.
    pub fn evaluate(&self, word: &Word) -> Element {
        word.gens()
            .iter()
            .fold(Element::IDENTITY, |acc, g| self.multiply_gen(acc, *g, Side::Right))
    }

    /// Element named by an arbitrary word, via Tits reduction.
    pub fn reduce(&self, word: &Word) -> Result<Element, CoxeterError> {
        let nf = self.cache.normal_form(word).map_err(|e| match e {
            WordError::TooLong(n) => CoxeterError::LengthCap {
                length: n,
                cap: self.max_length,
            },
            other => panic!("unexpected reduction failure: {other}"),
        })?;
        self.ensure_length(nf.len())?;
        Ok(Element(self.table.read().by_word[&nf]))
    }

    /// Parses a word string and reduces it.
    pub fn parse(&self, s: &str) -> Result<Element, CoxeterError> {
        self.reduce(&s.parse()?)
    }

    pub fn is_reduced(&self, word: &Word) -> Result<bool, CoxeterError> {
        Ok(self.length(self.reduce(word)?) == word.len())
    }

    /// `l(w u) = l(w) + l(u)`.
    pub fn is_length_additive(&self, w: Element, u: Element) -> bool {
        self.length(self.multiply(w, u)) == self.length(w) + self.length(u)
    }

    /// Longest element `w_I` of the finite parabolic subgroup `W_I`.
    pub fn longest_parabolic(&self, subset: ParabolicLabel) -> Result<Element, CoxeterError> {
        let gens: Vec<Generator> = subset.iter().collect();
        let word = match gens.as_slice() {
            [] => Word::new(),
            [g] => Word::from_gens(vec![*g]),
            [a, b] => Word::alternating(*a, *b, self.params.bond(*a, *b) as usize),
            _ => return Err(CoxeterError::InfiniteParabolic),
        };
        self.reduce(&word)
    }

    /// Splits `w` against the parabolic subgroup `W_I`.
    ///
    /// For `Side::Right` this returns `(x, u)` with `w = x u`, `u` in `W_I`
    /// and `x` of minimal length in `w W_I`; for `Side::Left` it returns
    /// `(x, u)` with `w = u x` and `x` minimal in `W_I w`. In both cases the
    /// lengths add.
    pub fn parabolic_decompose(&self, w: Element, subset: ParabolicLabel, side: Side) -> (Element, Element) {
        let mut minimal = w;
        let mut parabolic = Element::IDENTITY;
        loop {
            let desc = self.descents(minimal, side).intersection(subset);
            let Some(g) = desc.iter().next() else { break };
            minimal = self.multiply_gen(minimal, g, side);
            let other = match side {
                Side::Right => Side::Left,
                Side::Left => Side::Right,
            };
            parabolic = self.multiply_gen(parabolic, g, other);
        }
        (minimal, parabolic)
    }

    /// Bruhat order via the lifting property: for a right descent `g` of
    /// `w`, `y <= w` iff `min(y, yg) <= wg`.
    pub fn bruhat_leq(&self, y: Element, w: Element) -> bool {
        let mut y = y;
        let mut w = w;
        loop {
            let (ly, lw) = (self.length(y), self.length(w));
            if ly > lw {
                return false;
            }
            if ly == lw {
                return y == w;
            }
            if ly == 0 {
                return true;
            }
            let g = self.right_descents(w).iter().next().expect("w is not the identity");
            if self.right_descents(y).contains(g) {
                y = self.multiply_gen(y, g, Side::Right);
            }
            w = self.multiply_gen(w, g, Side::Right);
        }
    }

    /// Every element of length `<= n`, in ShortLex order.
    pub fn enumerate_up_to(&self, n: usize) -> Result<Vec<Element>, CoxeterError> {
        self.ensure_length(n)?;
        let end = self.table.read().layer_start[n + 1];
        Ok((0..end as u32).map(Element).collect())
    }

    /// Every element of length exactly `n`, in ShortLex order.
    pub fn layer(&self, n: usize) -> Result<Vec<Element>, CoxeterError> {
        self.ensure_length(n)?;
        let t = self.table.read();
        Ok((t.layer_start[n] as u32..t.layer_start[n + 1] as u32)
            .map(Element)
            .collect())
    }

    /// Whether `w = (w1)(suffix)` for some `w1`, i.e. the reduced word
    /// `suffix` can be peeled off the right of `w` with lengths adding.
    pub fn ends_with_reduced(&self, w: Element, suffix: &Word) -> Result<bool, CoxeterError> {
        if !self.is_reduced(suffix)? {
            return Err(CoxeterError::NotReduced(suffix.clone()));
        }
        let mut x = w;
        for g in suffix.gens().iter().rev() {
            if !self.right_descents(x).contains(*g) {
                return Ok(false);
            }
            x = self.multiply_gen(x, *g, Side::Right);
        }
        Ok(true)
    }

    /// Whether `w = (prefix)(w1)` for some `w1`.
    pub fn starts_with_reduced(&self, w: Element, prefix: &Word) -> Result<bool, CoxeterError> {
        self.ends_with_reduced(self.inverse(w), &prefix.reversed())
    }

    /// Elements of the parabolic subgroup `W_I`, `|I| <= 2`, in ShortLex order.
    pub fn parabolic_elements(&self, subset: ParabolicLabel) -> Result<Vec<Element>, CoxeterError> {
        let longest = self.longest_parabolic(subset)?;
        let mut out = vec![Element::IDENTITY];
        let mut frontier = vec![Element::IDENTITY];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in frontier {
                for g in subset.iter() {
                    let y = self.multiply_gen(x, g, Side::Right);
                    if self.length(y) > self.length(x) && !next.contains(&y) {
                        next.push(y);
                    }
                }
            }
            out.extend(next.iter().copied());
            frontier = next;
        }
        out.sort();
        debug_assert_eq!(out.last(), Some(&longest));
        Ok(out)
    }
}

/// Borrowed read access to an enumerated table.
pub struct View<'a> {
    table: RwLockReadGuard<'a, Table>,
}

impl View<'_> {
    fn entry(&self, w: Element) -> &Entry {
        &self.table.entries[w.index()]
    }

    pub fn length(&self, w: Element) -> usize {
        self.entry(w).word.len()
    }

    pub fn word(&self, w: Element) -> &Word {
        &self.entry(w).word
    }

    pub fn left_descents(&self, w: Element) -> GenSet {
        self.entry(w).left
    }

    pub fn right_descents(&self, w: Element) -> GenSet {
        self.entry(w).right
    }

    pub fn inverse(&self, w: Element) -> Element {
        Element(self.entry(w).inverse)
    }

    pub fn top_length(&self) -> usize {
        self.table.top_length()
    }

    fn try_mul(&self, w: Element, g: Generator, side: Side) -> Option<Element> {
        let e = self.entry(w);
        let x = match side {
            Side::Left => e.lmul[g.index()],
            Side::Right => e.rmul[g.index()],
        };
        (x != UNKNOWN).then_some(Element(x))
    }

    /// `w g`; the product must already be enumerated.
    pub fn mul_right(&self, w: Element, g: Generator) -> Element {
        self.try_mul(w, g, Side::Right)
            .expect("product outside the enumerated table; call ensure_length first")
    }

    /// `g w`; the product must already be enumerated.
    pub fn mul_left(&self, w: Element, g: Generator) -> Element {
        self.try_mul(w, g, Side::Left)
            .expect("product outside the enumerated table; call ensure_length first")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn group(a: u32, b: u32) -> Group {
        Group::new(GroupParams::new(a, b).unwrap())
    }

    #[test]
    fn neutral_element() {
        let g = group(7, 3);
        let e = g.neutral();
        assert_eq!(g.length(e), 0);
        assert!(g.left_descents(e).is_empty());
        assert_eq!(g.multiply(e, e), e);
        assert_eq!(g.name(e), "");
    }

    #[test]
    fn multiply_gen_examples() {
        let g = group(7, 3);
        let s = g.multiply_gen(g.neutral(), S, Side::Right);
        assert_eq!(g.name(s), "s");
        assert_eq!(g.multiply_gen(s, S, Side::Right), g.neutral());
        let t = g.parse("t").unwrap();
        let tr = g.multiply_gen(t, R, Side::Right);
        assert_eq!(g.name(tr), "tr");
        assert_eq!(g.multiply_gen(g.parse("r").unwrap(), T, Side::Right), tr);
    }

    #[test]
    fn multiply_examples() {
        let g = group(7, 3);
        let w = g.parse("srt").unwrap();
        assert_eq!(g.multiply(w, g.neutral()), w);
        let s = g.parse("s").unwrap();
        assert_eq!(g.multiply(s, s), g.neutral());
        let st = g.parse("st").unwrap();
        let ts = g.parse("ts").unwrap();
        assert_eq!(g.multiply(st, ts), g.neutral());
        assert_eq!(g.name(g.multiply(st, g.parse("sr").unwrap())), "stsr");
    }

    #[test]
    fn inverse_examples() {
        let g = group(7, 3);
        assert_eq!(g.inverse(g.neutral()), g.neutral());
        assert_eq!(g.name(g.inverse(g.parse("st").unwrap())), "ts");
        let sts = g.parse("sts").unwrap();
        assert_eq!(g.inverse(sts), sts);
    }

    #[test]
    fn descents_examples() {
        let g = group(7, 3);
        let sts = g.parse("tst").unwrap();
        assert_eq!(g.name(sts), "sts");
        assert_eq!(g.right_descents(sts), GenSet::of(&[S, T]));
        assert!(g.right_descents(g.neutral()).is_empty());
    }

    #[test]
    fn longest_parabolic_examples() {
        let g = group(7, 3);
        let tr = g.longest_parabolic(GenSet::of(&[T, R])).unwrap();
        assert_eq!((g.name(tr).as_str(), g.length(tr)), ("tr", 2));
        let st = g.longest_parabolic(GenSet::of(&[S, T])).unwrap();
        assert_eq!(g.name(st), "sts");
        let sr = g.longest_parabolic(GenSet::of(&[S, R])).unwrap();
        assert_eq!(g.name(sr), "srsrsrs");
        for w in [tr, st, sr] {
            assert_eq!(g.left_descents(w), g.right_descents(w));
        }
        assert_eq!(g.right_descents(sr), GenSet::of(&[S, R]));
        assert!(matches!(
            g.longest_parabolic(GenSet::ALL),
            Err(CoxeterError::InfiniteParabolic)
        ));
    }

    #[test]
    fn parabolic_decompose_examples() {
        let g = group(7, 3);
        let sr = GenSet::of(&[S, R]);
        let e = g.neutral();
        assert_eq!(g.parabolic_decompose(e, sr, Side::Right), (e, e));
        let st = g.parse("st").unwrap();
        assert_eq!(g.parabolic_decompose(st, sr, Side::Right), (st, e));
        let ts = g.parse("ts").unwrap();
        let (x, u) = g.parabolic_decompose(ts, sr, Side::Right);
        assert_eq!((g.name(x).as_str(), g.name(u).as_str()), ("t", "s"));
        let w = g.parse("rstrs").unwrap();
        let (y, u) = g.parabolic_decompose(w, sr, Side::Left);
        assert_eq!(g.multiply(u, y), w);
        assert_eq!(g.length(u) + g.length(y), g.length(w));
        assert!(g.left_descents(y).intersection(sr).is_empty());
    }

    #[test]
    fn bruhat_examples() {
        let g = group(7, 3);
        let w = g.parse("srts").unwrap();
        assert!(g.bruhat_leq(g.neutral(), w));
        assert!(g.bruhat_leq(g.parse("s").unwrap(), g.parse("st").unwrap()));
        assert!(!g.bruhat_leq(g.parse("r").unwrap(), g.parse("sts").unwrap()));
        assert!(!g.bruhat_leq(g.parse("ts").unwrap(), g.parse("st").unwrap()));
    }

    #[test]
    fn enumerate_examples() {
        let g = group(7, 3);
        assert_eq!(g.enumerate_up_to(0).unwrap(), vec![g.neutral()]);
        let one: Vec<String> = g.enumerate_up_to(1).unwrap().into_iter().map(|x| g.name(x)).collect();
        assert_eq!(one, vec!["", "s", "t", "r"]);
        let two: Vec<String> = g.layer(2).unwrap().into_iter().map(|x| g.name(x)).collect();
        assert_eq!(two, vec!["st", "sr", "ts", "tr", "rs"]);
        assert_eq!(g.enumerate_up_to(2).unwrap().len(), 9);
    }

    #[test]
    fn ends_with_examples() {
        let g = group(7, 3);
        let w: Word = "st".parse().unwrap();
        let st = g.parse("st").unwrap();
        assert!(g.ends_with_reduced(st, &Word::new()).unwrap());
        assert!(g.ends_with_reduced(st, &w).unwrap());
        let sts = g.parse("sts").unwrap();
        assert!(g.ends_with_reduced(sts, &"ts".parse().unwrap()).unwrap());
        assert!(g.ends_with_reduced(sts, &"st".parse().unwrap()).unwrap());
        assert!(!g.ends_with_reduced(sts, &"r".parse().unwrap()).unwrap());
        assert!(matches!(
            g.ends_with_reduced(sts, &"ss".parse().unwrap()),
            Err(CoxeterError::NotReduced(_))
        ));
    }

    #[test]
    fn length_cap_is_enforced() {
        let g = Group::with_max_length(GroupParams::new(7, 3).unwrap(), 3);
        assert!(g.ensure_length(3).is_ok());
        assert!(matches!(
            g.ensure_length(4),
            Err(CoxeterError::LengthCap { length: 4, cap: 3 })
        ));
    }

    #[test]
    fn parabolic_elements_are_dihedral() {
        let g = group(7, 3);
        let p = g.parabolic_elements(GenSet::of(&[S, R])).unwrap();
        assert_eq!(p.len(), 14);
        let q = g.parabolic_elements(GenSet::of(&[T, R])).unwrap();
        assert_eq!(q.len(), 4);
    }
}
