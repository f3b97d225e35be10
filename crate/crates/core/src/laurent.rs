//! Exact coefficient rings.
//!
//! Three polynomial types share one integer coefficient parameter `C`:
//!
//! * [`XiPoly`]: polynomials in `xi = q^(1/2) - q^(-1/2)`, the native
//!   coefficient type of products in the normalized standard basis.
//! * [`HalfLaurent`]: Laurent polynomials in `q^(1/2)`, i.e. the ring
//!   `Z[q^(1/2), q^(-1/2)]`. Exponents are stored doubled, so the key `n`
//!   means `q^(n/2)`.
//! * [`QPoly`]: ordinary polynomials in `q`, used for Kazhdan-Lusztig
//!   polynomials.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use thiserror::Error;

/// Integer ring usable as polynomial coefficients.
///
/// Implemented for every type with the listed abilities; in practice
/// `i64`, `i128` and `num_bigint::BigInt`.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Send
    + Sync
    + From<i32>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Zero
        + One
        + Send
        + Sync
        + From<i32>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + for<'a> AddAssign<&'a T>
        + for<'a> SubAssign<&'a T>
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("Laurent polynomial {0} is not in the span of powers of xi")]
    NotInXiSpan(String),
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn or_zero(self) -> i64 {
        self.finite().unwrap_or(0)
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

fn trim<C: Coefficient>(coeffs: &mut Vec<C>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

fn dense_add<C: Coefficient>(a: &mut Vec<C>, b: &[C]) {
    if a.len() < b.len() {
        a.resize(b.len(), C::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    trim(a);
}

fn dense_sub<C: Coefficient>(a: &mut Vec<C>, b: &[C]) {
    if a.len() < b.len() {
        a.resize(b.len(), C::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
    trim(a);
}

fn dense_mul<C: Coefficient>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x.clone() * y.clone());
        }
    }
    trim(&mut out);
    out
}

fn render_dense<C: Coefficient>(f: &mut fmt::Formatter<'_>, coeffs: &[C], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{c}*{var}")?,
            _ => write!(f, "{c}*{var}^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

macro_rules! dense_ring_ops {
    ($ty:ident) => {
        impl<C: Coefficient> Add for $ty<C> {
            type Output = $ty<C>;
            fn add(mut self, rhs: $ty<C>) -> $ty<C> {
                dense_add(&mut self.coeffs, &rhs.coeffs);
                self
            }
        }

        impl<'a, C: Coefficient> Add<&'a $ty<C>> for &'a $ty<C> {
            type Output = $ty<C>;
            fn add(self, rhs: &'a $ty<C>) -> $ty<C> {
                let mut out = self.clone();
                dense_add(&mut out.coeffs, &rhs.coeffs);
                out
            }
        }

        impl<'a, C: Coefficient> AddAssign<&'a $ty<C>> for $ty<C> {
            fn add_assign(&mut self, rhs: &'a $ty<C>) {
                dense_add(&mut self.coeffs, &rhs.coeffs);
            }
        }

        impl<C: Coefficient> Sub for $ty<C> {
            type Output = $ty<C>;
            fn sub(mut self, rhs: $ty<C>) -> $ty<C> {
                dense_sub(&mut self.coeffs, &rhs.coeffs);
                self
            }
        }

        impl<'a, C: Coefficient> SubAssign<&'a $ty<C>> for $ty<C> {
            fn sub_assign(&mut self, rhs: &'a $ty<C>) {
                dense_sub(&mut self.coeffs, &rhs.coeffs);
            }
        }

        impl<C: Coefficient> Neg for $ty<C> {
            type Output = $ty<C>;
            fn neg(self) -> $ty<C> {
                $ty {
                    coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
                }
            }
        }

        impl<C: Coefficient> Mul for $ty<C> {
            type Output = $ty<C>;
            fn mul(self, rhs: $ty<C>) -> $ty<C> {
                $ty {
                    coeffs: dense_mul(&self.coeffs, &rhs.coeffs),
                }
            }
        }

        impl<'a, C: Coefficient> Mul<&'a $ty<C>> for &'a $ty<C> {
            type Output = $ty<C>;
            fn mul(self, rhs: &'a $ty<C>) -> $ty<C> {
                $ty {
                    coeffs: dense_mul(&self.coeffs, &rhs.coeffs),
                }
            }
        }

        impl<C: Coefficient> Zero for $ty<C> {
            fn zero() -> Self {
                $ty { coeffs: Vec::new() }
            }
            fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }
        }

        impl<C: Coefficient> One for $ty<C> {
            fn one() -> Self {
                $ty {
                    coeffs: vec![C::one()],
                }
            }
        }

        impl<C: Coefficient> Default for $ty<C> {
            fn default() -> Self {
                Self::zero()
            }
        }

        impl<C: Coefficient> $ty<C> {
            /// Builds a polynomial from ascending coefficients; trailing zeros are dropped.
            pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
                trim(&mut coeffs);
                $ty { coeffs }
            }

            pub fn constant(c: C) -> Self {
                Self::from_coeffs(vec![c])
            }

            /// Ascending coefficients, without trailing zeros.
            pub fn coeffs(&self) -> &[C] {
                &self.coeffs
            }

            pub fn coeff(&self, k: usize) -> C {
                self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
            }

            pub fn degree(&self) -> Degree {
                match self.coeffs.len() {
                    0 => Degree::NegInfinity,
                    n => Degree::Finite(n as i64 - 1),
                }
            }

            pub fn is_nonnegative(&self) -> bool {
                self.coeffs.iter().all(|c| *c >= C::zero())
            }

            /// Multiplies by the variable `k` times.
            pub fn shift(&self, k: usize) -> Self {
                if self.coeffs.is_empty() {
                    return self.clone();
                }
                let mut coeffs = vec![C::zero(); k];
                coeffs.extend(self.coeffs.iter().cloned());
                $ty { coeffs }
            }

            pub fn scale(&self, c: &C) -> Self {
                Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
            }
        }
    };
}

/// Polynomial in `xi = q^(1/2) - q^(-1/2)` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiPoly<C> {
    coeffs: Vec<C>,
}

dense_ring_ops!(XiPoly);

impl<C: Coefficient> XiPoly<C> {
    pub fn xi() -> Self {
        Self::from_coeffs(vec![C::zero(), C::one()])
    }

    /// `self * xi`.
    pub fn mul_xi(&self) -> Self {
        self.shift(1)
    }

    pub fn to_half(&self) -> HalfLaurent<C> {
        xi_to_half(self)
    }
}

impl<C: Coefficient> Debug for XiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

/// Renders as `c0 + c1*x + c2*x^2`, with `x` standing for xi; zero terms omitted.
impl<C: Coefficient> Display for XiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_dense(f, &self.coeffs, "x")
    }
}

/// Ordinary polynomial in `q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly<C> {
    coeffs: Vec<C>,
}

dense_ring_ops!(QPoly);

impl<C: Coefficient> QPoly<C> {
    /// The polynomial `q`.
    pub fn q() -> Self {
        Self::from_coeffs(vec![C::zero(), C::one()])
    }

    pub fn to_half(&self) -> HalfLaurent<C> {
        let mut out = HalfLaurent::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out.add_term(2 * k as i32, c);
        }
        out
    }
}

impl<C: Coefficient> Debug for QPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl<C: Coefficient> Display for QPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_dense(f, &self.coeffs, "q")
    }
}

/// Laurent polynomial in `q^(1/2)`; key `n` holds the coefficient of `q^(n/2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfLaurent<C> {
    terms: BTreeMap<i32, C>,
}

impl<C: Coefficient> HalfLaurent<C> {
    /// `c * q^(n/2)`.
    pub fn monomial(c: C, n: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        HalfLaurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (n, c) in terms {
            out.add_term(n, &c);
        }
        out
    }

    /// `q^(1/2) - q^(-1/2)`.
    pub fn xi() -> Self {
        Self::from_terms([(1, C::one()), (-1, -C::one())])
    }

    /// `q^(1/2) + q^(-1/2)`.
    pub fn eta() -> Self {
        Self::from_terms([(1, C::one()), (-1, C::one())])
    }

    pub fn add_term(&mut self, n: i32, c: &C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(n).or_insert_with(C::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    /// Coefficient of `q^(n/2)`.
    pub fn coeff(&self, n: i32) -> C {
        self.terms.get(&n).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms `(n, c)` meaning `c * q^(n/2)`, ascending in `n`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> + '_ {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    /// Highest exponent, in units of `q^(1/2)`.
    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(n) => Degree::Finite(*n as i64),
            None => Degree::NegInfinity,
        }
    }

    /// Lowest exponent, in units of `q^(1/2)`; `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Multiplies by `q^(n/2)`.
    pub fn shift(&self, n: i32) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(k, c)| (k + n, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, x)| (*n, x.clone() * c.clone())))
    }

    pub fn mul_xi(&self) -> Self {
        let mut out = self.shift(1);
        out -= &self.shift(-1);
        out
    }

    /// The involution `q^(1/2) -> q^(-1/2)`.
    pub fn bar(&self) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(n, c)| (-n, c.clone())).collect(),
        }
    }

    /// The involution `q^(1/2) -> -q^(-1/2)`, which fixes `xi`.
    pub fn xi_swap(&self) -> Self {
        HalfLaurent {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (-n, if n % 2 == 0 { c.clone() } else { -c.clone() }))
                .collect(),
        }
    }

    pub fn to_xi(&self) -> Result<XiPoly<C>, LaurentError> {
        half_to_xi(self)
    }

    /// Reads back a polynomial in `q`; `None` when a negative or odd exponent occurs.
    pub fn to_qpoly(&self) -> Option<QPoly<C>> {
        let mut coeffs = Vec::new();
        for (n, c) in &self.terms {
            if *n < 0 || n % 2 != 0 {
                return None;
            }
            let k = (*n / 2) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, C::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(QPoly::from_coeffs(coeffs))
    }
}

impl<C: Coefficient> Zero for HalfLaurent<C> {
    fn zero() -> Self {
        HalfLaurent { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for HalfLaurent<C> {
    fn one() -> Self {
        Self::monomial(C::one(), 0)
    }
}

impl<C: Coefficient> Default for HalfLaurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a, C: Coefficient> AddAssign<&'a HalfLaurent<C>> for HalfLaurent<C> {
    fn add_assign(&mut self, rhs: &'a HalfLaurent<C>) {
        for (n, c) in &rhs.terms {
            self.add_term(*n, c);
        }
    }
}

impl<'a, C: Coefficient> SubAssign<&'a HalfLaurent<C>> for HalfLaurent<C> {
    fn sub_assign(&mut self, rhs: &'a HalfLaurent<C>) {
        for (n, c) in &rhs.terms {
            self.add_term(*n, &-c.clone());
        }
    }
}

impl<C: Coefficient> Add for HalfLaurent<C> {
    type Output = HalfLaurent<C>;
    fn add(mut self, rhs: HalfLaurent<C>) -> HalfLaurent<C> {
        self += &rhs;
        self
    }
}

impl<C: Coefficient> Sub for HalfLaurent<C> {
    type Output = HalfLaurent<C>;
    fn sub(mut self, rhs: HalfLaurent<C>) -> HalfLaurent<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coefficient> Neg for HalfLaurent<C> {
    type Output = HalfLaurent<C>;
    fn neg(self) -> HalfLaurent<C> {
        HalfLaurent {
            terms: self.terms.into_iter().map(|(n, c)| (n, -c)).collect(),
        }
    }
}

impl<'a, C: Coefficient> Mul<&'a HalfLaurent<C>> for &'a HalfLaurent<C> {
    type Output = HalfLaurent<C>;
    fn mul(self, rhs: &'a HalfLaurent<C>) -> HalfLaurent<C> {
        let mut out = HalfLaurent::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, &(x.clone() * y.clone()));
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for HalfLaurent<C> {
    type Output = HalfLaurent<C>;
    fn mul(self, rhs: HalfLaurent<C>) -> HalfLaurent<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Debug for HalfLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

/// Renders as a sum of `c*q^(n/2)` terms with ascending `n`.
impl<C: Coefficient> Display for HalfLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*q^({n}/2)")?;
        }
        Ok(())
    }
}

/// Substitutes `xi = q^(1/2) - q^(-1/2)`.
pub fn xi_to_half<C: Coefficient>(p: &XiPoly<C>) -> HalfLaurent<C> {
    // Horner in xi.
    let mut acc = HalfLaurent::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul_xi();
        acc.add_term(0, c);
    }
    acc
}

/// Inverse of [`xi_to_half`] on its image.
///
/// `xi^k` has top term `q^(k/2)` with coefficient 1, so peeling off the top
/// term repeatedly is a triangular solve; a negative top exponent means the
/// input is not a polynomial in xi.
pub fn half_to_xi<C: Coefficient>(p: &HalfLaurent<C>) -> Result<XiPoly<C>, LaurentError> {
    let mut rest = p.clone();
    let mut coeffs: Vec<C> = Vec::new();
    while let Degree::Finite(top) = rest.degree() {
        if top < 0 {
            return Err(LaurentError::NotInXiSpan(p.to_string()));
        }
        let k = top as usize;
        let c = rest.coeff(top as i32);
        if coeffs.len() <= k {
            coeffs.resize(k + 1, C::zero());
        }
        coeffs[k] += &c;
        rest -= &xi_to_half(&XiPoly::constant(c).shift(k));
    }
    Ok(XiPoly::from_coeffs(coeffs))
}
