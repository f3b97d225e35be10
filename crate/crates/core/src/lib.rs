//! Exact arithmetic for rank-3 Coxeter groups `<s, t, r>` with `tr = rt`,
//! their Hecke algebras, and Kazhdan-Lusztig bases, together with an
//! exhaustive verifier for degree bounds on the structure constants of the
//! normalized standard basis.
//!
//! The polynomial and algebra types are generic over an integer coefficient
//! ring ([`laurent::Coefficient`]); the aliases at the crate root fix it to
//! arbitrary-precision integers.

pub mod coxeter;
pub mod hecke;
pub mod kl;
pub mod laurent;
pub mod verifier;
pub mod word_problem;

pub use coxeter::{
    CoxeterError, Element, GenSet, Generator, Group, GroupParams, ParabolicLabel, Side, TheoremCase, Word,
};
pub use laurent::{Coefficient, Degree};

/// Arbitrary-precision integer coefficients.
pub type Integer = num_bigint::BigInt;

pub type XiPoly = laurent::XiPoly<Integer>;
pub type HalfLaurent = laurent::HalfLaurent<Integer>;
pub type QPoly = laurent::QPoly<Integer>;

pub type HeckeVector = hecke::HeckeVector<XiPoly>;
pub type Hecke<'g> = hecke::Hecke<'g, Integer>;
pub type KlTable<'g> = kl::KlTable<'g, Integer>;
pub type Verifier<'g> = verifier::Verifier<'g, Integer>;
