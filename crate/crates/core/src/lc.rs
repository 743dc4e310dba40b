//! Truncated arithmetic in the Levi-Civita field.
//!
//! A number is a finite sorted list of `(exponent, coefficient)` terms in the
//! canonical infinitesimal `d`, plus a *horizon*: the largest exponent up to
//! which the retained terms are known. Terms past the horizon are unknown and
//! never stored. The horizon is capped at `lambda + depth`, so every operation
//! terminates, and it is propagated through each operation:
//!
//! * `h(a + b) = min(h(a), h(b))`
//! * `h(a * b) = min(h(a) + lambda(b), h(b) + lambda(a))`
//! * `h(1 / a) = (h(a) - lambda(a)) - lambda(a)`
//!
//! Propagating the horizon this way makes `+` and `*` exactly associative and
//! commutative on the retained terms. The exact zero has an unbounded horizon.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::Rational;

type Terms = Vec<(Rational, Real)>;

/// Truncation settings shared by all operands of an operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncation {
    /// Exponent span retained beyond the leading exponent.
    pub depth: u32,
    /// Coefficients with `|c| <= zeta` are treated as zero. `0` selects exact
    /// rational coefficients.
    pub zeta: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { depth: Self::DEFAULT_DEPTH, zeta: Self::DEFAULT_ZETA }
    }
}

impl Truncation {
    pub const DEFAULT_DEPTH: u32 = 16;
    pub const DEFAULT_ZETA: f64 = 1e-13;

    pub fn new(depth: u32, zeta: f64) -> Self {
        Truncation { depth, zeta }
    }

    /// Exact-rational coefficient mode.
    pub fn exact(depth: u32) -> Self {
        Truncation { depth, zeta: 0.0 }
    }

    pub fn is_exact(&self) -> bool {
        self.zeta == 0.0
    }

    pub fn window(&self) -> Rational {
        Rational::from_integer(self.depth as i64)
    }

    pub fn zero(&self) -> LcNumber {
        LcNumber { terms: Vec::new(), horizon: None, trunc: *self }
    }

    pub fn one(&self) -> LcNumber {
        self.constant(Real::one())
    }

    /// The canonical positive infinitesimal `d`.
    pub fn d(&self) -> LcNumber {
        self.monomial(Real::one(), Rational::from_integer(1))
    }

    pub fn int(&self, n: i64) -> LcNumber {
        self.constant(Real::int(n))
    }

    pub fn ratio(&self, num: i64, den: i64) -> LcNumber {
        self.constant(Real::ratio(num, den))
    }

    pub fn from_f64(&self, x: f64) -> LcNumber {
        self.constant(Real::Float(x))
    }

    pub fn constant(&self, c: Real) -> LcNumber {
        self.monomial(c, Rational::zero())
    }

    /// `c * d^q`.
    pub fn monomial(&self, c: Real, q: Rational) -> LcNumber {
        LcNumber::from_terms(*self, alloc::vec![(q, c)], None)
    }

    /// `d^q`.
    pub fn d_pow(&self, q: Rational) -> LcNumber {
        self.monomial(Real::one(), q)
    }

    /// Builds a number from arbitrary terms (unsorted, repeated exponents allowed).
    pub fn from_terms<I: IntoIterator<Item = (Rational, Real)>>(&self, terms: I) -> LcNumber {
        let mut acc: BTreeMap<Rational, Real> = BTreeMap::new();
        for (q, c) in terms {
            accumulate(&mut acc, q, c);
        }
        LcNumber::from_terms(*self, acc.into_iter().collect(), None)
    }

    /// Coerces a real into this mode's coefficient domain.
    pub fn coerce(&self, c: Real) -> Real {
        match (self.is_exact(), c) {
            (true, Real::Float(x)) => Real::exact_from_f64(x),
            (false, Real::Exact(q)) => Real::Float(Real::Exact(q).to_f64()),
            (_, c) => c,
        }
    }

    /// Parses the text format `c0*d^q0 + c1*d^q1 + ...`.
    pub fn parse(&self, text: &str) -> Result<LcNumber> {
        crate::lc_text::parse(self, text)
    }
}

/// Real line extended by two infinities; the codomain of the standard part.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtReal {
    Finite(Real),
    PosInf,
    NegInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(Real::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<&Real> {
        match self {
            ExtReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::Finite(r) => r.to_f64(),
            ExtReal::PosInf => f64::INFINITY,
            ExtReal::NegInf => f64::NEG_INFINITY,
        }
    }

    /// Sum with `+inf` absorbing finite values. `+inf + -inf` is an error.
    pub fn checked_add(&self, other: &ExtReal) -> Result<ExtReal> {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Ok(ExtReal::Finite(a + b)),
            (ExtReal::PosInf, ExtReal::NegInf) | (ExtReal::NegInf, ExtReal::PosInf) => {
                Err(Error::InvalidArgument("+inf + -inf".into()))
            }
            (ExtReal::PosInf, _) | (_, ExtReal::PosInf) => Ok(ExtReal::PosInf),
            _ => Ok(ExtReal::NegInf),
        }
    }

    pub fn neg(&self) -> ExtReal {
        match self {
            ExtReal::Finite(r) => ExtReal::Finite(-r),
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::NegInf => ExtReal::PosInf,
        }
    }

    /// Multiplication by a finite real with `0 * inf = 0`.
    pub fn scale(&self, by: &Real) -> ExtReal {
        match self {
            ExtReal::Finite(r) => ExtReal::Finite(r * by),
            _ if by.is_zero() => ExtReal::zero(),
            ExtReal::PosInf if by.signum() > 0 => ExtReal::PosInf,
            ExtReal::NegInf if by.signum() < 0 => ExtReal::PosInf,
            _ => ExtReal::NegInf,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b),
            (PosInf, PosInf) | (NegInf, NegInf) => Some(Ordering::Equal),
            (PosInf, _) | (_, NegInf) => Some(Ordering::Greater),
            (NegInf, _) | (_, PosInf) => Some(Ordering::Less),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(r) => write!(f, "{}", r),
            ExtReal::PosInf => write!(f, "+inf"),
            ExtReal::NegInf => write!(f, "-inf"),
        }
    }
}

/// Order of magnitude of a Levi-Civita number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Magnitude {
    Zero,
    Infinitesimal,
    Appreciable,
    Infinite,
}

#[derive(Clone, Debug)]
pub struct LcNumber {
    terms: Terms,
    horizon: Option<Rational>,
    trunc: Truncation,
}

fn accumulate(acc: &mut BTreeMap<Rational, Real>, q: Rational, c: Real) {
    match acc.get_mut(&q) {
        Some(slot) => *slot = &*slot + &c,
        None => {
            acc.insert(q, c);
        }
    }
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

/// Product of two sorted term lists, dropping exponents above `limit`.
fn mul_terms(a: &[(Rational, Real)], b: &[(Rational, Real)], limit: Option<Rational>) -> Terms {
    let mut acc: BTreeMap<Rational, Real> = BTreeMap::new();
    for (qa, ca) in a {
        for (qb, cb) in b {
            let q = *qa + *qb;
            if let Some(l) = limit {
                if q > l {
                    // b is sorted, so every later term is past the limit too
                    break;
                }
            }
            accumulate(&mut acc, q, ca * cb);
        }
    }
    acc.into_iter().collect()
}

fn add_terms(a: &[(Rational, Real)], b: &[(Rational, Real)]) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0, &a[i].1 + &b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl LcNumber {
    /// Canonicalises sorted, duplicate-free terms: coerces coefficients into the
    /// mode, drops negligible ones, then applies the horizon and depth cap.
    fn from_terms(trunc: Truncation, terms: Terms, horizon: Option<Rational>) -> LcNumber {
        let mut kept: Terms = terms
            .into_iter()
            .map(|(q, c)| (q, trunc.coerce(c)))
            .filter(|(_, c)| !c.is_negligible(trunc.zeta))
            .collect();
        let horizon = match kept.first() {
            Some((lead, _)) => min_opt(horizon, Some(*lead + trunc.window())),
            None => horizon,
        };
        if let Some(h) = horizon {
            kept.retain(|(q, _)| *q <= h);
        }
        LcNumber { terms: kept, horizon, trunc }
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn terms(&self) -> &[(Rational, Real)] {
        &self.terms
    }

    /// Exponent past which terms are unknown; `None` only for the exact zero.
    pub fn horizon(&self) -> Option<Rational> {
        self.horizon
    }

    /// Coefficient at exponent `q` (zero when absent).
    pub fn coeff(&self, q: Rational) -> Real {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(&q))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Real::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(Rational, &Real)> {
        self.terms.first().map(|(q, c)| (*q, c))
    }

    /// Least exponent of the support; `None` stands for the infinite valuation of zero.
    pub fn lambda(&self) -> Option<Rational> {
        self.terms.first().map(|(q, _)| *q)
    }

    pub fn signum(&self) -> i32 {
        self.terms.first().map_or(0, |(_, c)| c.signum())
    }

    pub fn classify(&self) -> Magnitude {
        match self.lambda() {
            None => Magnitude::Zero,
            Some(l) if l.is_positive() => Magnitude::Infinitesimal,
            Some(l) if l.is_zero() => Magnitude::Appreciable,
            Some(_) => Magnitude::Infinite,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.classify(), Magnitude::Infinite)
    }

    pub fn is_infinitesimal(&self) -> bool {
        matches!(self.classify(), Magnitude::Zero | Magnitude::Infinitesimal)
    }

    /// Standard part: the exponent-0 coefficient of a finite number, or the
    /// signed infinity of an infinite one.
    pub fn standard_part(&self) -> ExtReal {
        match self.leading() {
            Some((l, c)) if l.is_negative() => {
                if c.signum() > 0 {
                    ExtReal::PosInf
                } else {
                    ExtReal::NegInf
                }
            }
            _ => ExtReal::Finite(self.coeff(Rational::zero())),
        }
    }

    /// Standard part of a finite number as a constant of the same field.
    pub fn standard_part_lc(&self) -> Option<LcNumber> {
        match self.standard_part() {
            ExtReal::Finite(r) => Some(self.trunc.constant(r)),
            _ => None,
        }
    }

    /// True iff `self - other` is zero or infinitesimal.
    pub fn monad_eq(&self, other: &LcNumber) -> bool {
        self.sub_unchecked(other).is_infinitesimal()
    }

    pub fn abs(&self) -> LcNumber {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    fn check(&self, other: &LcNumber) -> Result<()> {
        if self.trunc == other.trunc {
            Ok(())
        } else {
            Err(Error::TruncationMismatch)
        }
    }

    fn add_unchecked(&self, other: &LcNumber) -> LcNumber {
        LcNumber::from_terms(
            self.trunc,
            add_terms(&self.terms, &other.terms),
            min_opt(self.horizon, other.horizon),
        )
    }

    fn sub_unchecked(&self, other: &LcNumber) -> LcNumber {
        self.add_unchecked(&-other)
    }

    fn mul_unchecked(&self, other: &LcNumber) -> LcNumber {
        let horizon = min_opt(
            add_opt(self.horizon, other.lambda()),
            add_opt(other.horizon, self.lambda()),
        );
        let cap = add_opt(add_opt(self.lambda(), other.lambda()), Some(self.trunc.window()));
        let terms = mul_terms(&self.terms, &other.terms, min_opt(horizon, cap));
        LcNumber::from_terms(self.trunc, terms, horizon)
    }

    pub fn checked_add(&self, other: &LcNumber) -> Result<LcNumber> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &LcNumber) -> Result<LcNumber> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &LcNumber) -> Result<LcNumber> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &LcNumber) -> Result<LcNumber> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// Multiplies every coefficient by a real.
    pub fn scale(&self, by: &Real) -> LcNumber {
        let terms = self.terms.iter().map(|(q, c)| (*q, c * by)).collect();
        let horizon = if by.is_zero() { None } else { self.horizon };
        LcNumber::from_terms(self.trunc, terms, horizon)
    }

    /// Multiplies by `d^q`.
    pub fn shift(&self, q: Rational) -> LcNumber {
        let terms = self.terms.iter().map(|(e, c)| (*e + q, c.clone())).collect();
        LcNumber::from_terms(self.trunc, terms, self.horizon.map(|h| h + q))
    }

    /// Splits a nonzero number as `c * d^lambda * (1 + eps)`; returns
    /// `(lambda, c, eps, relative precision)`.
    fn factor(&self) -> Option<(Rational, Real, Terms, Rational)> {
        let (lam, c) = self.leading()?;
        let c = c.clone();
        let c_inv = c.recip()?;
        let eps: Terms = self.terms[1..]
            .iter()
            .map(|(q, a)| (*q - lam, a * &c_inv))
            .collect();
        let rel = self.horizon.map_or(self.trunc.window(), |h| h - lam);
        Some((lam, c, eps, rel))
    }

    /// Sum of `coef(n) * eps^n` over `n >= 0`, relative exponents up to `rel`.
    fn series_in(&self, eps: &[(Rational, Real)], rel: Rational, coef: impl Fn(u32) -> Real) -> Terms {
        let mut sum: Terms = alloc::vec![(Rational::zero(), coef(0))];
        let mut power: Terms = alloc::vec![(Rational::zero(), Real::one())];
        let mut n = 0u32;
        loop {
            power = mul_terms(&power, eps, Some(rel));
            power.retain(|(_, c)| !c.is_negligible(self.trunc.zeta));
            n += 1;
            if power.is_empty() {
                return sum;
            }
            let k = coef(n);
            if k.is_zero() {
                continue;
            }
            let scaled: Terms = power.iter().map(|(q, c)| (*q, c * &k)).collect();
            sum = add_terms(&sum, &scaled);
        }
    }

    /// Multiplicative inverse via the geometric series of the infinitesimal part.
    pub fn inv(&self) -> Result<LcNumber> {
        let (lam, c, eps, rel) = self.factor().ok_or(Error::DivisionByZero)?;
        let neg_eps: Terms = eps.iter().map(|(q, a)| (*q, -a)).collect();
        let series = self.series_in(&neg_eps, rel, |_| Real::one());
        let c_inv = c.recip().ok_or(Error::DivisionByZero)?;
        let terms = series.into_iter().map(|(q, a)| (q - lam, &a * &c_inv)).collect();
        Ok(LcNumber::from_terms(self.trunc, terms, Some(rel - lam)))
    }

    /// Positive `n`-th root via the leading monomial root and the binomial
    /// series of `(1 + eps)^(1/n)`.
    pub fn root(&self, n: u32) -> Result<LcNumber> {
        if n == 0 {
            return Err(Error::InvalidArgument("root of order 0".into()));
        }
        if self.signum() <= 0 {
            return Err(Error::NonPositiveRoot);
        }
        let (lam, c, eps, rel) = self.factor().ok_or(Error::NonPositiveRoot)?;
        let alpha = Real::ratio(1, n as i64);
        let series = self.series_in(&eps, rel, |k| binomial_real(&alpha, k));
        let lead_root = c.nth_root(n).ok_or(Error::NonPositiveRoot)?;
        let shift = lam / Rational::from_integer(n as i64);
        let terms = series.into_iter().map(|(q, a)| (q + shift, &a * &lead_root)).collect();
        Ok(LcNumber::from_terms(self.trunc, terms, Some(rel + shift)))
    }

    /// Integer power by repeated squaring; negative exponents go through `inv`.
    pub fn powi(&self, n: i64) -> Result<LcNumber> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let mut base = self.clone();
        let mut acc = self.trunc.one();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// Sign of the leading coefficient of `self - other`.
    pub fn lc_cmp(&self, other: &LcNumber) -> Ordering {
        match self.sub_unchecked(other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    pub fn lt(&self, other: &LcNumber) -> bool {
        self.lc_cmp(other) == Ordering::Less
    }

    pub fn le(&self, other: &LcNumber) -> bool {
        self.lc_cmp(other) != Ordering::Greater
    }

    pub fn max_of(&self, other: &LcNumber) -> LcNumber {
        if self.lt(other) {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn min_of(&self, other: &LcNumber) -> LcNumber {
        if other.lt(self) {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// Largest `|coefficient difference|` over the exponents both operands know,
    /// i.e. up to the smaller horizon.
    pub fn residual_within_window(&self, other: &LcNumber) -> Real {
        let limit = min_opt(self.horizon, other.horizon);
        let diff = add_terms(&self.terms, &other.terms.iter().map(|(q, c)| (*q, -c)).collect::<Terms>());
        diff.into_iter()
            .filter(|(q, _)| limit.is_none_or(|l| *q <= l))
            .map(|(_, c)| c.abs())
            .fold(Real::zero(), |m, c| if c > m { c } else { m })
    }

    /// Equality of the retained terms up to the common horizon.
    pub fn agrees_with(&self, other: &LcNumber) -> bool {
        self.residual_within_window(other).is_zero()
    }

    /// Same value in another truncation (terms are re-coerced and re-capped).
    pub fn with_truncation(&self, trunc: Truncation) -> LcNumber {
        LcNumber::from_terms(trunc, self.terms.clone(), self.horizon)
    }

    /// Keeps only the terms with exponent `<= limit` and lowers the horizon.
    pub fn truncated_at(&self, limit: Rational) -> LcNumber {
        LcNumber::from_terms(self.trunc, self.terms.clone(), min_opt(self.horizon, Some(limit)))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn binomial_real(alpha: &Real, k: u32) -> Real {
    let mut b = Real::one();
    for i in 0..k {
        b = &(&b * &(alpha - &Real::int(i as i64))) / &Real::int(i as i64 + 1);
    }
    b
}

impl PartialEq for LcNumber {
    /// Equality of the retained terms; the horizon is not compared.
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| a.0 == b.0 && a.1 == b.1)
    }
}

impl Neg for &LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        LcNumber {
            terms: self.terms.iter().map(|(q, c)| (*q, -c)).collect(),
            horizon: self.horizon,
            trunc: self.trunc,
        }
    }
}

impl Neg for LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        -&self
    }
}

macro_rules! lc_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a LcNumber> for &'a LcNumber {
            type Output = LcNumber;
            /// # Panics
            /// If the operands use different truncation settings, or on division by zero.
            fn $m(self, rhs: &'a LcNumber) -> LcNumber {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $tr for LcNumber {
            type Output = LcNumber;
            fn $m(self, rhs: LcNumber) -> LcNumber {
                (&self).$m(&rhs)
            }
        }
    };
}

lc_binop!(Add, add, checked_add);
lc_binop!(Sub, sub, checked_sub);
lc_binop!(Mul, mul, checked_mul);
lc_binop!(Div, div, checked_div);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, m: i64) -> Rational {
        Rational::new(n, m)
    }

    fn exact() -> Truncation {
        Truncation::exact(16)
    }

    #[test]
    fn add_cancels() {
        let t = exact();
        let a = t.one() + t.d();
        let b = t.one() - t.d();
        assert_eq!(a + b, t.int(2));
    }

    #[test]
    fn add_merges_terms() {
        let t = exact();
        let a = t.int(3) + t.d_pow(q(1, 2));
        let b = t.int(2) + t.d();
        let s = a + b;
        assert_eq!(s.coeff(q(0, 1)), Real::int(5));
        assert_eq!(s.coeff(q(1, 2)), Real::one());
        assert_eq!(s.coeff(q(1, 1)), Real::one());
        assert_eq!(s.terms().len(), 3);
    }

    #[test]
    fn mul_examples() {
        let t = exact();
        let d = t.d();
        assert_eq!((t.one() + d.clone()) * (t.one() - d.clone()), t.one() - d.clone() * d.clone());
        let h = t.d_pow(q(1, 2));
        assert_eq!(&h * &h, d);
        let p = (t.one() + d.clone() + d.powi(2).unwrap()) * (t.one() - d.clone());
        assert_eq!(p, t.one() - d.powi(3).unwrap());
    }

    #[test]
    fn inverse_geometric() {
        let t = exact();
        let inv = (t.one() - t.d()).inv().unwrap();
        assert_eq!(inv.terms().len(), 17);
        for k in 0..=16 {
            assert_eq!(inv.coeff(Rational::from_integer(k)), Real::one());
        }
        let prod = &inv * &(t.one() - t.d());
        assert_eq!(prod, t.one());
        assert_eq!(t.int(2).inv().unwrap(), t.ratio(1, 2));
        assert_eq!(t.d().inv().unwrap(), t.d_pow(q(-1, 1)));
        assert_eq!(t.zero().inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn ordering() {
        let t = exact();
        let d = t.d();
        assert_eq!(d.lc_cmp(&d.powi(2).unwrap()), Ordering::Greater);
        assert_eq!((t.int(3) + d.clone()).lc_cmp(&t.int(3)), Ordering::Greater);
        assert_eq!((t.one() - d).lc_cmp(&t.one()), Ordering::Less);
    }

    #[test]
    fn valuation_and_classes() {
        let t = exact();
        assert_eq!((t.d_pow(q(1, 2)) + t.d()).lambda(), Some(q(1, 2)));
        assert_eq!(t.int(5).lambda(), Some(q(0, 1)));
        assert_eq!(t.zero().lambda(), None);
        assert_eq!(t.d().classify(), Magnitude::Infinitesimal);
        assert_eq!((t.int(7) + t.d()).classify(), Magnitude::Appreciable);
        assert_eq!(t.d_pow(q(-2, 1)).classify(), Magnitude::Infinite);
        assert_eq!(t.zero().classify(), Magnitude::Zero);
    }

    #[test]
    fn standard_parts() {
        let t = exact();
        let d = t.d();
        assert_eq!((t.int(3) + t.int(5) * d.clone()).standard_part(), ExtReal::Finite(Real::int(3)));
        assert_eq!(d.inv().unwrap().standard_part(), ExtReal::PosInf);
        assert_eq!((-d.inv().unwrap()).standard_part(), ExtReal::NegInf);
        let x = t.one() + d.clone();
        let y = t.int(2) + d;
        assert_eq!((&x * &y).standard_part(), ExtReal::Finite(Real::int(2)));
    }

    #[test]
    fn monads() {
        let t = exact();
        assert!(t.one().monad_eq(&(t.one() + t.d())));
        assert!(!t.one().monad_eq(&t.int(2)));
        assert!(t.d().monad_eq(&t.d().powi(2).unwrap()));
    }

    #[test]
    fn roots() {
        let t = exact();
        assert_eq!(t.d().powi(2).unwrap().root(2).unwrap(), t.d());
        assert_eq!(t.int(4).root(2).unwrap(), t.int(2));
        let r = (t.one() + t.d()).root(2).unwrap();
        assert_eq!(r.coeff(q(1, 1)), Real::ratio(1, 2));
        assert_eq!(r.coeff(q(2, 1)), Real::ratio(-1, 8));
        assert_eq!(r.coeff(q(3, 1)), Real::ratio(1, 16));
        assert_eq!(&r * &r, t.one() + t.d());
        assert_eq!(t.d().inv().unwrap().root(2).unwrap(), t.d_pow(q(-1, 2)));
        assert_eq!(t.int(-1).root(2).unwrap_err(), Error::NonPositiveRoot);
    }

    #[test]
    fn float_mode_thresholds() {
        let t = Truncation::default();
        let a = t.from_f64(1.0) + t.monomial(Real::Float(1e-14), q(1, 1));
        assert_eq!(a.terms().len(), 1);
    }

    #[test]
    fn mismatched_truncation() {
        let a = Truncation::exact(16).one();
        let b = Truncation::exact(8).one();
        assert_eq!(a.checked_add(&b).unwrap_err(), Error::TruncationMismatch);
    }

    #[test]
    fn horizon_is_capped_by_depth() {
        let t = Truncation::exact(4);
        let x = t.from_terms([(q(0, 1), Real::one()), (q(5, 1), Real::one())]);
        assert_eq!(x.terms().len(), 1);
        assert_eq!(x.horizon(), Some(q(4, 1)));
    }

    #[test]
    fn zero_is_additive_identity() {
        let t = exact();
        let x = t.int(3) + t.d_pow(q(2, 3));
        let y = &x + &t.zero();
        assert_eq!(y, x);
        assert_eq!(y.horizon(), x.horizon());
    }
}
