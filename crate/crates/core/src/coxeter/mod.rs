//! Rank-3 Coxeter groups `W = <s, t, r>` with `tr = rt`.
//!
//! This module holds the small value types (generators, words, parameter
//! sets); [`Group`] in `group.rs` owns the enumerated Cayley table and
//! implements the element-level operations.

mod group;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use group::{Element, Group, View, DEFAULT_MAX_WORD_LENGTH};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("bond label m_{pair} = {value} is not allowed (need a finite value >= 3)")]
    BadBond { pair: &'static str, value: u32 },
    #[error("invalid generator letter {0:?} (expected one of s, t, r)")]
    BadLetter(char),
    #[error("the parabolic subgroup generated by {{s, t, r}} is infinite")]
    InfiniteParabolic,
    #[error("word {0} is not reduced")]
    NotReduced(Word),
    #[error("element length {length} exceeds the configured cap of {cap}")]
    LengthCap { length: usize, cap: usize },
}

/// One of the three Coxeter generators, ordered `s < t < r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum Generator {
    S = 0,
    T = 1,
    R = 2,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::S, Generator::T, Generator::R];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Generator {
        Generator::ALL[i]
    }

    pub fn letter(self) -> char {
        match self {
            Generator::S => 's',
            Generator::T => 't',
            Generator::R => 'r',
        }
    }

    pub fn from_letter(c: char) -> Result<Generator, CoxeterError> {
        match c {
            's' => Ok(Generator::S),
            't' => Ok(Generator::T),
            'r' => Ok(Generator::R),
            other => Err(CoxeterError::BadLetter(other)),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Which side a generator multiplies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Subset of `{s, t, r}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenSet(u8);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);
    pub const ALL: GenSet = GenSet(0b111);

    pub const fn of(gens: &[Generator]) -> GenSet {
        let mut bits = 0;
        let mut i = 0;
        while i < gens.len() {
            bits |= 1 << gens[i] as u8;
            i += 1;
        }
        GenSet(bits)
    }

    pub fn single(g: Generator) -> GenSet {
        GenSet(1 << g.index())
    }

    pub fn with(self, g: Generator) -> GenSet {
        GenSet(self.0 | (1 << g.index()))
    }

    pub fn contains(self, g: Generator) -> bool {
        self.0 & (1 << g.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Generator> {
        Generator::ALL.into_iter().filter(move |g| self.contains(*g))
    }

    pub fn bits(self) -> u8 {
        self.0
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Generator> for GenSet {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        iter.into_iter().fold(GenSet::EMPTY, |acc, g| acc.with(g))
    }
}

/// Subset `I` of the generators naming the parabolic subgroup `W_I`.
pub type ParabolicLabel = GenSet;

/// A finite word over `{s, t, r}`, not necessarily reduced.
///
/// Serialized as a plain string over the alphabet, the empty string being
/// the neutral element.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new() -> Word {
        Word(Vec::new())
    }

    pub fn from_gens(gens: Vec<Generator>) -> Word {
        Word(gens)
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn first(&self) -> Option<Generator> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Generator> {
        self.0.last().copied()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Alternating word `a b a b ...` of length `len`.
    pub fn alternating(a: Generator, b: Generator, len: usize) -> Word {
        Word((0..len).map(|i| if i % 2 == 0 { a } else { b }).collect())
    }

    /// Length-then-lexicographic comparison under `s < t < r`.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Word, CoxeterError> {
        s.chars()
            .map(Generator::from_letter)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Which hypothesis of the boundedness theorem a parameter pair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremCase {
    /// `m_sr >= 7` and `m_st = 3`.
    CaseA,
    /// `m_sr >= 5` and `m_st >= 4`.
    CaseB,
    OutOfTheorem,
}

impl TheoremCase {
    pub fn label(self) -> &'static str {
        match self {
            TheoremCase::CaseA => "A",
            TheoremCase::CaseB => "B",
            TheoremCase::OutOfTheorem => "none",
        }
    }
}

/// Coxeter matrix data: orders of `sr` and `st`; `tr` always has order 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    m_sr: u32,
    m_st: u32,
}

impl GroupParams {
    pub const M_TR: u32 = 2;

    pub fn new(m_sr: u32, m_st: u32) -> Result<GroupParams, CoxeterError> {
        if m_sr < 3 {
            return Err(CoxeterError::BadBond {
                pair: "sr",
                value: m_sr,
            });
        }
        if m_st < 3 {
            return Err(CoxeterError::BadBond {
                pair: "st",
                value: m_st,
            });
        }
        Ok(GroupParams { m_sr, m_st })
    }

    pub fn m_sr(&self) -> u32 {
        self.m_sr
    }

    pub fn m_st(&self) -> u32 {
        self.m_st
    }

    /// Order of `gh`; 1 on the diagonal.
    pub fn bond(&self, g: Generator, h: Generator) -> u32 {
        use Generator::*;
        match (g, h) {
            _ if g == h => 1,
            (S, R) | (R, S) => self.m_sr,
            (S, T) | (T, S) => self.m_st,
            _ => Self::M_TR,
        }
    }

    pub fn case(&self) -> TheoremCase {
        if self.m_sr >= 7 && self.m_st == 3 {
            TheoremCase::CaseA
        } else if self.m_sr >= 5 && self.m_st >= 4 {
            TheoremCase::CaseB
        } else {
            TheoremCase::OutOfTheorem
        }
    }

    /// The degree bound asserted for the case: `m_sr` in case A,
    /// `max(m_sr, m_st)` in case B.
    pub fn theorem_bound(&self) -> Option<u32> {
        match self.case() {
            TheoremCase::CaseA => Some(self.m_sr),
            TheoremCase::CaseB => Some(self.m_sr.max(self.m_st)),
            TheoremCase::OutOfTheorem => None,
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m_sr={}, m_st={}, m_tr=2)", self.m_sr, self.m_st)
    }
}
