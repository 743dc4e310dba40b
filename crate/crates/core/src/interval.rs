use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::lc::LcNumber;

/// Interval of the Levi-Civita field with its two boundary flags.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalLc {
    lo: LcNumber,
    hi: LcNumber,
    lo_closed: bool,
    hi_closed: bool,
}

impl IntervalLc {
    pub fn new(lo: LcNumber, hi: LcNumber, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo.truncation() != hi.truncation() {
            return Err(Error::TruncationMismatch);
        }
        match lo.lc_cmp(&hi) {
            Ordering::Greater => Err(Error::InvalidInterval(alloc::format!("{} > {}", lo, hi))),
            Ordering::Equal if !(lo_closed && hi_closed) => {
                Err(Error::InvalidInterval("a degenerate interval must be closed".into()))
            }
            _ => Ok(IntervalLc { lo, hi, lo_closed, hi_closed }),
        }
    }

    pub fn closed(lo: LcNumber, hi: LcNumber) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn lo(&self) -> &LcNumber {
        &self.lo
    }

    pub fn hi(&self) -> &LcNumber {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    /// `hi - lo`; boundary flags do not matter.
    pub fn length(&self) -> LcNumber {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo.lc_cmp(&self.hi) == Ordering::Equal
    }

    pub fn midpoint(&self) -> LcNumber {
        let t = self.lo.truncation();
        &(&self.lo + &self.hi) * &t.ratio(1, 2)
    }

    pub fn contains(&self, x: &LcNumber) -> bool {
        let above = match self.lo.lc_cmp(x) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match x.lc_cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    /// Containment respecting boundary flags.
    pub fn is_subset_of(&self, other: &IntervalLc) -> bool {
        let lo_ok = match other.lo.lc_cmp(&self.lo) {
            Ordering::Less => true,
            Ordering::Equal => other.lo_closed || !self.lo_closed,
            Ordering::Greater => false,
        };
        let hi_ok = match self.hi.lc_cmp(&other.hi) {
            Ordering::Less => true,
            Ordering::Equal => other.hi_closed || !self.hi_closed,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }

    /// Containment of the closures (endpoints only).
    pub fn within_hull_of(&self, other: &IntervalLc) -> bool {
        other.lo.le(&self.lo) && self.hi.le(&other.hi)
    }

    /// True when every point of `self` lies strictly before every point of `other`.
    pub fn precedes(&self, other: &IntervalLc) -> bool {
        match self.hi.lc_cmp(&other.lo) {
            Ordering::Less => true,
            Ordering::Equal => !(self.hi_closed && other.lo_closed),
            Ordering::Greater => false,
        }
    }

    pub fn is_disjoint(&self, other: &IntervalLc) -> bool {
        self.precedes(other) || other.precedes(self)
    }

    pub fn intersect(&self, other: &IntervalLc) -> Option<IntervalLc> {
        let (lo, lo_closed) = match self.lo.lc_cmp(&other.lo) {
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.lc_cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        IntervalLc::new(lo, hi, lo_closed, hi_closed).ok()
    }

    pub fn translate(&self, x: &LcNumber) -> IntervalLc {
        IntervalLc {
            lo: &self.lo + x,
            hi: &self.hi + x,
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }

    /// Image under `y = x * t`; endpoints swap for negative factors.
    pub fn scale(&self, x: &LcNumber) -> IntervalLc {
        let a = &self.lo * x;
        let b = &self.hi * x;
        match x.signum() {
            s if s >= 0 => IntervalLc {
                lo_closed: self.lo_closed || s == 0,
                hi_closed: self.hi_closed || s == 0,
                lo: a,
                hi: b,
            },
            _ => IntervalLc { lo: b, hi: a, lo_closed: self.hi_closed, hi_closed: self.lo_closed },
        }
    }
}

impl fmt::Display for IntervalLc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lc::Truncation;

    #[test]
    fn construction_rules() {
        let t = Truncation::exact(16);
        assert!(IntervalLc::closed(t.one(), t.zero()).is_err());
        assert!(IntervalLc::new(t.one(), t.one(), true, false).is_err());
        assert!(IntervalLc::closed(t.one(), t.one()).is_ok());
    }

    #[test]
    fn membership_and_order() {
        let t = Truncation::exact(16);
        let i = IntervalLc::new(t.zero(), t.one(), true, false).unwrap();
        assert!(i.contains(&t.zero()));
        assert!(!i.contains(&t.one()));
        assert!(i.contains(&(t.one() - t.d())));
        assert!(!i.contains(&(-t.d())));
        let j = IntervalLc::closed(t.one(), t.int(2)).unwrap();
        assert!(i.precedes(&j));
        let k = IntervalLc::closed(t.zero(), t.one()).unwrap();
        assert!(!k.precedes(&j));
        assert_eq!(k.intersect(&j).unwrap(), IntervalLc::closed(t.one(), t.one()).unwrap());
    }

    #[test]
    fn negative_scaling_swaps() {
        let t = Truncation::exact(16);
        let i = IntervalLc::new(t.zero(), t.one(), true, false).unwrap();
        let s = i.scale(&t.int(-2));
        assert_eq!(s.lo(), &t.int(-2));
        assert!(!s.lo_closed());
        assert!(s.hi_closed());
    }
}
