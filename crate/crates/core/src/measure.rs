//! The uniform measure `m` and the real measure `m_L` on finite unions of
//! Levi-Civita intervals with an optional certified infinitesimal tail.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::interval::IntervalLc;
use crate::lc::{ExtReal, LcNumber, Truncation};
use crate::real::Real;
use crate::Rational;

/// Certificate that the intervals left out of a set have total length of
/// order at least `d^bound_exponent`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailCertificate {
    bound_exponent: Rational,
    pub description: String,
}

impl TailCertificate {
    pub fn new(bound_exponent: Rational, description: impl Into<String>) -> Result<Self> {
        if bound_exponent <= Rational::from_integer(0) {
            return Err(Error::TailNotInfinitesimal(bound_exponent));
        }
        Ok(TailCertificate { bound_exponent, description: description.into() })
    }

    pub fn bound_exponent(&self) -> Rational {
        self.bound_exponent
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurableSet {
    trunc: Truncation,
    intervals: Vec<IntervalLc>,
    tail: Option<TailCertificate>,
}

/// Value of `m` plus the order of the omitted tail, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub value: LcNumber,
    pub tail_bound: Option<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Verified,
    Violated,
    /// `m_L(A)` or the factor is infinite, so nothing is asserted.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScaleReport {
    pub measure: ExtReal,
    pub expected: Option<ExtReal>,
    pub homogeneity: Homogeneity,
    pub warnings: Vec<String>,
}

fn sort_intervals(intervals: &mut [IntervalLc]) {
    intervals.sort_by(|a, b| a.lo().lc_cmp(b.lo()).then_with(|| b.lo_closed().cmp(&a.lo_closed())));
}

/// Hull of two intervals that are known to overlap or touch.
fn join(a: &IntervalLc, b: &IntervalLc) -> IntervalLc {
    let (hi, hi_closed) = match a.hi().lc_cmp(b.hi()) {
        Ordering::Less => (b.hi().clone(), b.hi_closed()),
        Ordering::Greater => (a.hi().clone(), a.hi_closed()),
        Ordering::Equal => (a.hi().clone(), a.hi_closed() || b.hi_closed()),
    };
    IntervalLc::new(a.lo().clone(), hi, a.lo_closed(), hi_closed).expect("hull of sorted intervals")
}

impl MeasurableSet {
    /// Disjoint union of the given intervals. Intervals sharing an endpoint
    /// that one of them contains are merged; genuine overlaps are rejected.
    pub fn new(trunc: Truncation, intervals: Vec<IntervalLc>, tail: Option<TailCertificate>) -> Result<Self> {
        Self::build(trunc, intervals, tail, false)
    }

    /// Union of arbitrary intervals, merging overlaps.
    pub fn union_of(trunc: Truncation, intervals: Vec<IntervalLc>) -> Result<Self> {
        Self::build(trunc, intervals, None, true)
    }

    pub fn empty(trunc: Truncation) -> Self {
        MeasurableSet { trunc, intervals: Vec::new(), tail: None }
    }

    fn build(trunc: Truncation, mut intervals: Vec<IntervalLc>, tail: Option<TailCertificate>, merge: bool) -> Result<Self> {
        if intervals.iter().any(|i| i.lo().truncation() != trunc) {
            return Err(Error::TruncationMismatch);
        }
        sort_intervals(&mut intervals);
        let mut out: Vec<IntervalLc> = Vec::with_capacity(intervals.len());
        for next in intervals {
            let Some(last) = out.last_mut() else {
                out.push(next);
                continue;
            };
            match last.hi().lc_cmp(next.lo()) {
                Ordering::Less => out.push(next),
                Ordering::Equal if !(last.hi_closed() || next.lo_closed()) => out.push(next),
                Ordering::Equal => *last = join(last, &next),
                Ordering::Greater if merge => *last = join(last, &next),
                Ordering::Greater => return Err(Error::Overlap),
            }
        }
        Ok(MeasurableSet { trunc, intervals: out, tail })
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn intervals(&self) -> &[IntervalLc] {
        &self.intervals
    }

    pub fn tail(&self) -> Option<&TailCertificate> {
        self.tail.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.tail.is_none()
    }

    /// `m(A)`: exact sum of the listed lengths.
    pub fn m_measure(&self) -> MeasureReport {
        let value = self.intervals.iter().fold(self.trunc.zero(), |acc, i| &acc + &i.length());
        MeasureReport { value, tail_bound: self.tail.as_ref().map(|t| t.bound_exponent) }
    }

    /// `m_L(A)`: sum of the standard parts of the lengths.
    pub fn ml_measure(&self) -> ExtReal {
        let mut total = ExtReal::zero();
        for i in &self.intervals {
            total = total.checked_add(&i.length().standard_part()).expect("lengths are non-negative");
        }
        total
    }

    pub fn translate(&self, x: &LcNumber) -> MeasurableSet {
        MeasurableSet {
            trunc: self.trunc,
            intervals: self.intervals.iter().map(|i| i.translate(x)).collect(),
            tail: self.tail.clone(),
        }
    }

    /// `xA` together with the homogeneity check `m_L(xA) = |st x| m_L(A)`.
    pub fn scale(&self, x: &LcNumber) -> (MeasurableSet, ScaleReport) {
        let mut warnings = Vec::new();
        let tail = match (&self.tail, x.lambda()) {
            (Some(t), Some(l)) => {
                let shifted = t.bound_exponent + l;
                match TailCertificate::new(shifted, t.description.clone()) {
                    Ok(c) => Some(c),
                    Err(_) => {
                        warnings.push(alloc::format!(
                            "scaled tail has order d^{} and is no longer infinitesimal; dropped",
                            shifted
                        ));
                        None
                    }
                }
            }
            _ => None,
        };
        let scaled: Vec<_> = self.intervals.iter().map(|i| i.scale(x)).collect();
        let set = MeasurableSet::union_of(self.trunc, scaled).expect("scaling keeps truncation");
        let set = MeasurableSet { tail, ..set };
        let measure = set.ml_measure();
        let before = self.ml_measure();
        let (expected, homogeneity) = match (x.abs().standard_part(), &before) {
            (ExtReal::Finite(s), ExtReal::Finite(_)) => {
                let want = before.scale(&s);
                let ok = ext_close(&measure, &want, self.trunc);
                (Some(want), if ok { Homogeneity::Verified } else { Homogeneity::Violated })
            }
            _ => (None, Homogeneity::Indeterminate),
        };
        (set, ScaleReport { measure, expected, homogeneity, warnings })
    }

    /// Interval-union containment.
    pub fn is_subset_of(&self, other: &MeasurableSet) -> bool {
        self.intervals.iter().all(|i| other.intervals.iter().any(|o| i.is_subset_of(o)))
    }

    /// `A ⊎ B`, failing if the two overlap.
    pub fn disjoint_union(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch);
        }
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        let tail = match (&self.tail, &other.tail) {
            (Some(a), Some(b)) => Some(TailCertificate::new(
                a.bound_exponent.min(b.bound_exponent),
                alloc::format!("{}; {}", a.description, b.description),
            )?),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        MeasurableSet::new(self.trunc, all, tail)
    }

    /// `st(A)` as closed real intervals plus isolated points.
    pub fn shadow(&self) -> Result<Shadow> {
        let mut pieces = Vec::new();
        let mut points = Vec::new();
        for i in &self.intervals {
            let a = finite_st(i.lo())?;
            let b = finite_st(i.hi())?;
            if a < b {
                pieces.push(RealInterval { lo: a, hi: b, lo_closed: true, hi_closed: true });
            } else {
                points.push(a);
            }
        }
        let intervals = RealSet::union_of(pieces);
        points.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        points.dedup();
        points.retain(|p| !intervals.contains(p));
        let measure = intervals.lebesgue();
        Ok(Shadow { intervals, points, measure, tail_omitted: self.tail.is_some() })
    }
}

fn finite_st(x: &LcNumber) -> Result<Real> {
    match x.standard_part() {
        ExtReal::Finite(r) => Ok(r),
        _ => Err(Error::InfiniteEndpoint),
    }
}

/// Equality in exact mode, `1e-12` relative agreement otherwise.
fn ext_close(a: &ExtReal, b: &ExtReal, trunc: Truncation) -> bool {
    match (a, b) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => {
            if trunc.is_exact() && x.is_exact() && y.is_exact() {
                x == y
            } else {
                let (x, y) = (x.to_f64(), y.to_f64());
                (x - y).abs() <= 1e-12 * y.abs().max(1.0)
            }
        }
        _ => a == b,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealInterval {
    pub lo: Real,
    pub hi: Real,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl RealInterval {
    pub fn new(lo: Real, hi: Real, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        match lo.partial_cmp(&hi) {
            Some(Ordering::Less) => Ok(RealInterval { lo, hi, lo_closed, hi_closed }),
            Some(Ordering::Equal) if lo_closed && hi_closed => Ok(RealInterval { lo, hi, lo_closed, hi_closed }),
            _ => Err(Error::InvalidInterval(alloc::format!("[{}, {}]", lo, hi))),
        }
    }

    pub fn closed(lo: Real, hi: Real) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn length(&self) -> Real {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Real) -> bool {
        let above = if self.lo_closed { self.lo <= *x } else { self.lo < *x };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }

    /// The interval's copy in the Levi-Civita field.
    pub fn to_lc(&self, trunc: Truncation) -> IntervalLc {
        IntervalLc::new(trunc.constant(self.lo.clone()), trunc.constant(self.hi.clone()), self.lo_closed, self.hi_closed)
            .expect("real interval is ordered")
    }
}

/// Finite union of disjoint real intervals, sorted by left endpoint.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RealSet {
    intervals: Vec<RealInterval>,
}

impl RealSet {
    pub fn new(intervals: Vec<RealInterval>) -> Result<Self> {
        Self::build(intervals, false)
    }

    pub fn union_of(intervals: Vec<RealInterval>) -> Self {
        Self::build(intervals, true).expect("merging union cannot fail")
    }

    fn build(mut intervals: Vec<RealInterval>, merge: bool) -> Result<Self> {
        intervals.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(Ordering::Equal).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<RealInterval> = Vec::with_capacity(intervals.len());
        for next in intervals {
            let Some(last) = out.last_mut() else {
                out.push(next);
                continue;
            };
            let order = last.hi.partial_cmp(&next.lo).unwrap_or(Ordering::Equal);
            let touching = order == Ordering::Equal && (last.hi_closed || next.lo_closed);
            if order == Ordering::Less || (order == Ordering::Equal && !touching) {
                out.push(next);
            } else if touching || merge {
                if next.hi > last.hi || (next.hi == last.hi && next.hi_closed) {
                    last.hi_closed = next.hi_closed || (next.hi == last.hi && last.hi_closed);
                    last.hi = next.hi;
                }
            } else {
                return Err(Error::Overlap);
            }
        }
        Ok(RealSet { intervals: out })
    }

    pub fn intervals(&self) -> &[RealInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Real) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    /// Lebesgue measure.
    pub fn lebesgue(&self) -> Real {
        self.intervals.iter().fold(Real::zero(), |acc, i| &acc + &i.length())
    }

    /// Inner and outer Levi-Civita sets around `st^-1(R)`, with the outer
    /// intervals widened by `1/n` on each side.
    pub fn st_preimage_sandwich(&self, trunc: Truncation, n: u64) -> Result<Sandwich> {
        if n == 0 {
            return Err(Error::InvalidArgument("sandwich width index must be positive".into()));
        }
        let width = trunc.constant(Real::ratio(1, n as i64));
        let inner = MeasurableSet::new(trunc, self.intervals.iter().map(|i| i.to_lc(trunc)).collect(), None)?;
        let widened = inner
            .intervals
            .iter()
            .map(|i| IntervalLc::closed(i.lo() - &width, i.hi() + &width))
            .collect::<Result<Vec<_>>>()?;
        let outer = MeasurableSet::union_of(trunc, widened)?;
        Ok(Sandwich { inner, outer, value: ExtReal::Finite(self.lebesgue()) })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sandwich {
    pub inner: MeasurableSet,
    pub outer: MeasurableSet,
    /// Lebesgue measure of the real set, equal to `m_L(st^-1(R))`.
    pub value: ExtReal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Shadow {
    pub intervals: RealSet,
    pub points: Vec<Real>,
    pub measure: Real,
    /// The tail's shadow (a countable set of measure zero) is not listed.
    pub tail_omitted: bool,
}

/// Bounded rectangle in `F^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RectangleNd {
    sides: Vec<IntervalLc>,
}

impl RectangleNd {
    pub fn new(sides: Vec<IntervalLc>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::DimensionMismatch);
        }
        Ok(RectangleNd { sides })
    }

    pub fn sides(&self) -> &[IntervalLc] {
        &self.sides
    }

    pub fn dimension(&self) -> usize {
        self.sides.len()
    }

    /// Product of side lengths, before taking the standard part.
    pub fn volume(&self) -> LcNumber {
        let t = self.sides[0].lo().truncation();
        self.sides.iter().fold(t.one(), |acc, s| &acc * &s.length())
    }

    fn separated_from(&self, other: &RectangleNd) -> bool {
        self.sides.iter().zip(&other.sides).any(|(a, b)| a.is_disjoint(b))
    }
}

/// `sum st(prod l(I_k))` over pairwise disjoint rectangles.
pub fn rect_measure(rects: &[RectangleNd]) -> Result<ExtReal> {
    if let Some(first) = rects.first() {
        if rects.iter().any(|r| r.dimension() != first.dimension()) {
            return Err(Error::DimensionMismatch);
        }
    }
    for (i, a) in rects.iter().enumerate() {
        if rects[i + 1..].iter().any(|b| !a.separated_from(b)) {
            return Err(Error::Overlap);
        }
    }
    let mut total = ExtReal::zero();
    for r in rects {
        total = total.checked_add(&r.volume().standard_part())?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn t() -> Truncation {
        Truncation::exact(16)
    }

    fn iv(a: LcNumber, b: LcNumber) -> IntervalLc {
        IntervalLc::closed(a, b).unwrap()
    }

    fn set(parts: Vec<IntervalLc>) -> MeasurableSet {
        MeasurableSet::new(t(), parts, None).unwrap()
    }

    #[test]
    fn uniform_measure_examples() {
        let t = t();
        assert_eq!(set(vec![iv(t.zero(), t.one() + t.d())]).m_measure().value, t.one() + t.d());
        let a = set(vec![iv(t.zero(), t.d()), iv(t.one(), t.one() + t.d() * t.d())]);
        assert_eq!(a.m_measure().value, t.d() + t.d() * t.d());
        let b = set(vec![iv(t.zero(), t.one()), iv(t.int(2), t.int(3))]);
        assert_eq!(b.m_measure().value, t.int(2));
    }

    #[test]
    fn real_measure_examples() {
        let t = t();
        assert_eq!(set(vec![iv(t.zero(), t.one() + t.d())]).ml_measure(), ExtReal::Finite(Real::one()));
        assert_eq!(set(vec![iv(t.zero(), t.d())]).ml_measure(), ExtReal::zero());
        assert_eq!(set(vec![iv(t.zero(), t.d().inv().unwrap())]).ml_measure(), ExtReal::PosInf);
    }

    #[test]
    fn touching_intervals_merge_and_overlaps_fail() {
        let t = t();
        let a = set(vec![iv(t.one(), t.int(2)), iv(t.zero(), t.one())]);
        assert_eq!(a.intervals().len(), 1);
        let open = IntervalLc::new(t.one(), t.int(2), false, true).unwrap();
        let half = IntervalLc::new(t.zero(), t.one(), true, false).unwrap();
        assert_eq!(set(vec![half, open]).intervals().len(), 2);
        let r = MeasurableSet::new(t, vec![iv(t.zero(), t.int(2)), iv(t.one(), t.int(3))], None);
        assert_eq!(r.unwrap_err(), Error::Overlap);
    }

    #[test]
    fn translation_examples() {
        let t = t();
        let a = set(vec![iv(t.zero(), t.one())]);
        let moved = a.translate(&t.d());
        assert_eq!(moved.intervals()[0], iv(t.d(), t.one() + t.d()));
        assert_eq!(moved.ml_measure(), a.ml_measure());
        assert_eq!(a.translate(&t.zero()), a);
        let b = set(vec![iv(t.zero(), t.one()), iv(t.int(2), t.int(3))]);
        assert_eq!(b.translate(&t.int(-5)).ml_measure(), ExtReal::Finite(Real::int(2)));
    }

    #[test]
    fn scaling_examples() {
        let t = t();
        let (_, rep) = set(vec![iv(t.zero(), t.one())]).scale(&(t.int(2) + t.d()));
        assert_eq!(rep.measure, ExtReal::Finite(Real::int(2)));
        assert_eq!(rep.homogeneity, Homogeneity::Verified);

        let a_big = t.d().inv().unwrap();
        let big = set(vec![iv(t.zero(), a_big.clone())]);
        let r = t.int(3) + t.d();
        let by = |p: i64, q: i64| &r * &a_big.root(q as u32).unwrap().powi(-p).unwrap();
        assert_eq!(big.scale(&by(1, 1)).1.measure, ExtReal::Finite(Real::int(3)));
        assert_eq!(big.scale(&by(2, 1)).1.measure, ExtReal::zero());
        assert_eq!(big.scale(&by(1, 2)).1.measure, ExtReal::PosInf);
        assert_eq!(big.scale(&by(1, 1)).1.homogeneity, Homogeneity::Indeterminate);

        let (_, rep) = set(vec![iv(t.zero(), t.int(5))]).scale(&t.d());
        assert_eq!(rep.measure, ExtReal::zero());
        assert_eq!(rep.homogeneity, Homogeneity::Verified);
    }

    #[test]
    fn scaling_a_tail() {
        let t = t();
        let tail = TailCertificate::new(Rational::from_integer(2), "geometric").unwrap();
        let a = MeasurableSet::new(t, vec![iv(t.zero(), t.one())], Some(tail)).unwrap();
        let (s, rep) = a.scale(&t.d().powi(-3).unwrap());
        assert!(s.tail().is_none());
        assert_eq!(rep.warnings.len(), 1);
        let (s, _) = a.scale(&t.d());
        assert_eq!(s.tail().unwrap().bound_exponent(), Rational::from_integer(3));
    }

    #[test]
    fn sandwich_examples() {
        let t = t();
        let r = RealSet::new(vec![RealInterval::closed(Real::zero(), Real::one()).unwrap()]).unwrap();
        let s = r.st_preimage_sandwich(t, 10).unwrap();
        assert_eq!(s.inner.intervals()[0], iv(t.zero(), t.one()));
        assert_eq!(s.outer.intervals()[0], iv(t.ratio(-1, 10), t.ratio(11, 10)));
        assert_eq!(s.value, ExtReal::Finite(Real::one()));
        assert_eq!(RealSet::default().st_preimage_sandwich(t, 3).unwrap().value, ExtReal::zero());
        let two = RealSet::new(vec![
            RealInterval::closed(Real::zero(), Real::one()).unwrap(),
            RealInterval::closed(Real::int(2), Real::int(4)).unwrap(),
        ])
        .unwrap();
        assert_eq!(two.st_preimage_sandwich(t, 1).unwrap().value, ExtReal::Finite(Real::int(3)));
        // widening by 1 merges the two outer intervals
        assert_eq!(two.st_preimage_sandwich(t, 1).unwrap().outer.intervals().len(), 1);
        assert!(r.st_preimage_sandwich(t, 0).is_err());
    }

    #[test]
    fn shadow_examples() {
        let t = t();
        let a = set(vec![iv(t.zero(), t.one() + t.d()), iv(t.int(2) + t.d(), t.int(2) + t.d() * t.int(2))]);
        let s = a.shadow().unwrap();
        assert_eq!(s.intervals.intervals(), &[RealInterval::closed(Real::zero(), Real::one()).unwrap()][..]);
        assert_eq!(s.points, vec![Real::int(2)]);
        let s = set(vec![iv(t.zero(), t.d())]).shadow().unwrap();
        assert_eq!(s.points, vec![Real::zero()]);
        assert_eq!(s.measure, Real::zero());
        let b = set(vec![iv(t.zero(), t.one()), iv(t.one() + t.d(), t.int(2))]);
        let s = b.shadow().unwrap();
        assert_eq!(s.measure, Real::int(2));
        assert!(s.points.is_empty());
        let inf = set(vec![iv(t.zero(), t.d().inv().unwrap())]);
        assert_eq!(inf.shadow().unwrap_err(), Error::InfiniteEndpoint);
    }

    #[test]
    fn rectangle_examples() {
        let t = t();
        let r = RectangleNd::new(vec![iv(t.zero(), t.one() + t.d()), iv(t.zero(), t.int(2))]).unwrap();
        assert_eq!(rect_measure(core::slice::from_ref(&r)).unwrap(), ExtReal::Finite(Real::int(2)));
        let thin = RectangleNd::new(vec![iv(t.zero(), t.d()), iv(t.zero(), t.d().inv().unwrap())]).unwrap();
        assert_eq!(rect_measure(&[thin]).unwrap(), ExtReal::Finite(Real::one()));
        assert_eq!(rect_measure(&[]).unwrap(), ExtReal::zero());
        assert_eq!(rect_measure(&[r.clone(), r.clone()]).unwrap_err(), Error::Overlap);
        let line = RectangleNd::new(vec![iv(t.zero(), t.one())]).unwrap();
        assert_eq!(rect_measure(&[r, line]).unwrap_err(), Error::DimensionMismatch);
    }
}
