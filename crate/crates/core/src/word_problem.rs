//! Tits' solution of the word problem.
//!
//! Two words name the same element iff they are connected by braid moves and
//! deletions of squares `gg`; a word is reduced iff no word in its braid
//! class contains a square. Everything here works on words alone: no group
//! table is needed, which makes this module the ground truth the rest of
//! the crate is checked against.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fs;
use std::io::{self, BufRead, Write as _};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use thiserror::Error;

use crate::coxeter::{GenSet, Generator, GroupParams, Word};

/// Longest word the packed representation holds.
pub const MAX_PACKED_LEN: usize = 64;

const CACHE_FORMAT: &str = "hecke-bound-reduction-cache v1";

#[derive(Debug, Error)]
pub enum WordError {
    #[error("word {0} is not reduced")]
    NotReduced(Word),
    #[error("word of length {0} exceeds the supported maximum of {MAX_PACKED_LEN}")]
    TooLong(usize),
    #[error("cache file was written for {found}, but the current group is {expected}")]
    ParamMismatch { expected: GroupParams, found: GroupParams },
    #[error("malformed cache file at line {line}: {reason}")]
    BadCacheFile { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A braid relation `ghg... = hgh...`, both sides of length `m_gh`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidRelation {
    pub lhs: Word,
    pub rhs: Word,
}

/// The three braid relations of the presentation, for `{s,t}`, `{s,r}` and `{t,r}`.
pub fn braid_relations(params: &GroupParams) -> [BraidRelation; 3] {
    use Generator::*;
    let rel = |a: Generator, b: Generator| {
        let m = params.bond(a, b) as usize;
        BraidRelation {
            lhs: Word::alternating(a, b, m),
            rhs: Word::alternating(b, a, m),
        }
    };
    [rel(S, T), rel(S, R), rel(T, R)]
}

/// Word packed two bits per letter, first letter in the most significant
/// position, so that for equal lengths integer order is lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Packed {
    len: u8,
    bits: u128,
}

impl Packed {
    fn from_word(w: &Word) -> Result<Packed, WordError> {
        if w.len() > MAX_PACKED_LEN {
            return Err(WordError::TooLong(w.len()));
        }
        let bits = w.gens().iter().fold(0u128, |acc, g| (acc << 2) | g.index() as u128);
        Ok(Packed {
            len: w.len() as u8,
            bits,
        })
    }

    fn to_word(self) -> Word {
        (0..self.len as usize)
            .map(|i| Generator::from_index(self.get(i)))
            .collect()
    }

    #[inline]
    fn shift_of(self, i: usize) -> u32 {
        2 * (self.len as u32 - 1 - i as u32)
    }

    #[inline]
    fn get(self, i: usize) -> usize {
        ((self.bits >> self.shift_of(i)) & 3) as usize
    }

    #[inline]
    fn set(&mut self, i: usize, g: usize) {
        let sh = self.shift_of(i);
        self.bits = (self.bits & !(3u128 << sh)) | ((g as u128) << sh);
    }

    fn push(self, g: usize) -> Packed {
        Packed {
            len: self.len + 1,
            bits: (self.bits << 2) | g as u128,
        }
    }

    /// Removes letters `i` and `i + 1`.
    fn delete_pair(self, i: usize) -> Packed {
        let low_len = self.len as u32 - i as u32 - 2;
        let low = self.bits & ((1u128 << (2 * low_len)) - 1);
        let high = self.bits >> (2 * (low_len + 2));
        Packed {
            len: self.len - 2,
            bits: (high << (2 * low_len)) | low,
        }
    }

    fn square_at(self) -> Option<usize> {
        (0..(self.len as usize).saturating_sub(1)).find(|&i| self.get(i) == self.get(i + 1))
    }
}

/// Bond table indexed by generator index.
#[derive(Clone, Copy)]
struct Bonds([[usize; 3]; 3]);

impl Bonds {
    fn new(params: &GroupParams) -> Bonds {
        let mut m = [[1usize; 3]; 3];
        for a in Generator::ALL {
            for b in Generator::ALL {
                m[a.index()][b.index()] = params.bond(a, b) as usize;
            }
        }
        Bonds(m)
    }

    /// Calls `f` with every word one braid move away from `w`.
    fn for_each_move(self, w: Packed, mut f: impl FnMut(Packed)) {
        let n = w.len as usize;
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (w.get(i), w.get(i + 1));
            if a == b {
                continue;
            }
            let m = self.0[a][b];
            if i + m > n {
                continue;
            }
            if (i + 2..i + m).all(|j| w.get(j) == if (j - i) % 2 == 0 { a } else { b }) {
                let mut next = w;
                for j in i..i + m {
                    next.set(j, if (j - i) % 2 == 0 { b } else { a });
                }
                f(next);
            }
        }
    }
}

enum Exploration {
    /// The whole braid class; no member has a square.
    Class(HashSet<Packed>),
    /// A braid-equivalent word with one square deleted.
    Shortened(Packed),
}

fn explore(bonds: Bonds, start: Packed) -> Exploration {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(w) = queue.pop_front() {
        if let Some(i) = w.square_at() {
            return Exploration::Shortened(w.delete_pair(i));
        }
        bonds.for_each_move(w, |next| {
            if seen.insert(next) {
                queue.push_back(next);
            }
        });
    }
    Exploration::Class(seen)
}

/// Tits reduction of an arbitrary word to its ShortLex normal form.
fn tits_normal_form(bonds: Bonds, w: Packed) -> Packed {
    let mut cur = w;
    loop {
        match explore(bonds, cur) {
            Exploration::Shortened(next) => cur = next,
            Exploration::Class(class) => {
                return class.into_iter().min().expect("class contains its start word");
            }
        }
    }
}

/// All reduced expressions of the element a reduced word represents.
pub fn braid_closure(params: &GroupParams, w: &Word) -> Result<BTreeSet<Word>, WordError> {
    let packed = Packed::from_word(w)?;
    match explore(Bonds::new(params), packed) {
        Exploration::Class(class) => Ok(class.into_iter().map(Packed::to_word).collect()),
        Exploration::Shortened(_) => Err(WordError::NotReduced(w.clone())),
    }
}

/// ShortLex normal form of any word, without caching.
///
/// Letters are absorbed one at a time, so the working word never exceeds
/// the length of the element plus one.
pub fn normal_form(params: &GroupParams, w: &Word) -> Result<Word, WordError> {
    let bonds = Bonds::new(params);
    let mut cur = Packed { len: 0, bits: 0 };
    for g in w.gens() {
        if cur.len as usize >= MAX_PACKED_LEN {
            return Err(WordError::TooLong(cur.len as usize + 1));
        }
        cur = tits_normal_form(bonds, cur.push(g.index()));
    }
    Ok(cur.to_word())
}

pub fn is_reduced(params: &GroupParams, w: &Word) -> Result<bool, WordError> {
    Ok(normal_form(params, w)?.len() == w.len())
}

pub fn equal(params: &GroupParams, a: &Word, b: &Word) -> Result<bool, WordError> {
    Ok(normal_form(params, a)? == normal_form(params, b)?)
}

/// Cache statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

/// Memoized Tits reduction for one group.
///
/// Keys are exact words; each step of the letter-by-letter reduction is
/// cached, so extending a known normal form by one letter is a single
/// lookup once seen. A second table keyed by normal form stores descent
/// sets. Reads and writes are safe from many threads.
pub struct ReductionCache {
    params: GroupParams,
    bonds: Bonds,
    steps: DashMap<Packed, Packed>,
    descents: DashMap<Packed, (GenSet, GenSet)>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl ReductionCache {
    pub fn new(params: GroupParams) -> ReductionCache {
        ReductionCache {
            bonds: Bonds::new(&params),
            params,
            steps: DashMap::new(),
            descents: DashMap::new(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    fn step(&self, key: Packed) -> Packed {
        if let Some(v) = self.steps.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return *v;
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let nf = tits_normal_form(self.bonds, key);
        self.steps.insert(key, nf);
        nf
    }

    /// ShortLex normal form of an arbitrary word.
    pub fn normal_form(&self, w: &Word) -> Result<Word, WordError> {
        let mut cur = Packed { len: 0, bits: 0 };
        for g in w.gens() {
            if cur.len as usize >= MAX_PACKED_LEN {
                return Err(WordError::TooLong(cur.len as usize + 1));
            }
            cur = self.step(cur.push(g.index()));
        }
        Ok(cur.to_word())
    }

    /// Normal form of `nf * g` where `nf` is already a normal form.
    pub fn extend(&self, nf: &Word, g: Generator) -> Result<Word, WordError> {
        if nf.len() >= MAX_PACKED_LEN {
            return Err(WordError::TooLong(nf.len() + 1));
        }
        Ok(self.step(Packed::from_word(nf)?.push(g.index())).to_word())
    }

    /// Left and right descent sets of the element with reduced word `w`.
    pub fn descents(&self, w: &Word) -> Result<(GenSet, GenSet), WordError> {
        let key = Packed::from_word(w)?;
        if let Some(d) = self.descents.get(&key) {
            return Ok(*d);
        }
        let class = match explore(self.bonds, key) {
            Exploration::Class(c) => c,
            Exploration::Shortened(_) => return Err(WordError::NotReduced(w.clone())),
        };
        let mut left = GenSet::EMPTY;
        let mut right = GenSet::EMPTY;
        if key.len > 0 {
            for x in &class {
                left = left.with(Generator::from_index(x.get(0)));
                right = right.with(Generator::from_index(x.get(x.len as usize - 1)));
            }
        }
        self.descents.insert(key, (left, right));
        Ok((left, right))
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.steps.len(),
        }
    }

    /// Writes the step table as `<word> TAB <normal_form>` lines, sorted,
    /// behind a header naming the format version and the parameters.
    pub fn save(&self, path: &Path) -> Result<(), WordError> {
        let mut rows: Vec<(Packed, Packed)> = self.steps.iter().map(|e| (*e.key(), *e.value())).collect();
        rows.sort();
        let tmp = path.with_extension("tmp");
        {
            let mut out = io::BufWriter::new(fs::File::create(&tmp)?);
            writeln!(
                out,
                "# {CACHE_FORMAT} m_sr={} m_st={}",
                self.params.m_sr(),
                self.params.m_st()
            )?;
            for (k, v) in rows {
                writeln!(out, "{}\t{}", k.to_word(), v.to_word())?;
            }
            out.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Merges a cache file into this cache. Every record is re-verified
    /// against a fresh reduction before it is accepted.
    pub fn load(&self, path: &Path) -> Result<usize, WordError> {
        let file = io::BufReader::new(fs::File::open(path)?);
        let mut lines = file.lines();
        let header = lines.next().transpose()?.unwrap_or_default();
        let found = parse_header(&header).ok_or_else(|| WordError::BadCacheFile {
            line: 1,
            reason: format!("unrecognized header {header:?}"),
        })?;
        if found != self.params {
            return Err(WordError::ParamMismatch {
                expected: self.params,
                found,
            });
        }
        let mut count = 0;
        for (i, line) in lines.enumerate() {
            let line = line?;
            let lineno = i + 2;
            let bad = |reason: &str| WordError::BadCacheFile {
                line: lineno,
                reason: reason.to_string(),
            };
            let (k, v) = line.split_once('\t').ok_or_else(|| bad("missing tab separator"))?;
            let k: Word = k.parse().map_err(|_| bad("invalid word"))?;
            let v: Word = v.parse().map_err(|_| bad("invalid normal form"))?;
            let key = Packed::from_word(&k)?;
            let val = Packed::from_word(&v)?;
            if tits_normal_form(self.bonds, key) != val {
                return Err(bad("record disagrees with a fresh reduction"));
            }
            self.steps.insert(key, val);
            count += 1;
        }
        Ok(count)
    }
}

fn parse_header(header: &str) -> Option<GroupParams> {
    let rest = header.strip_prefix("# ")?.strip_prefix(CACHE_FORMAT)?;
    let mut m_sr = None;
    let mut m_st = None;
    for tok in rest.split_whitespace() {
        if let Some(v) = tok.strip_prefix("m_sr=") {
            m_sr = v.parse().ok();
        } else if let Some(v) = tok.strip_prefix("m_st=") {
            m_st = v.parse().ok();
        }
    }
    GroupParams::new(m_sr?, m_st?).ok()
}
