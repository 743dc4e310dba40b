//! Seeded random inputs for the acceptance suite and batch commands.
//!
//! Generated sets remember the standard parts of their endpoints as integer
//! numerators over a fixed denominator, so tests can recompute measures with
//! plain integer arithmetic.

use civita_core::{IntervalLc, LcNumber, MeasurableSet, Rational, Real, RealInterval, RealSet, Truncation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Denominator of generated standard endpoints.
pub const DEN: i64 = 12;

/// One independent stream per consumer, all derived from the run seed.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn coefficient<R: Rng>(rng: &mut R, trunc: Truncation) -> Real {
    let mut n = rng.random_range(-9i64..10);
    if n == 0 {
        n = 1;
    }
    trunc.coerce(Real::ratio(n, rng.random_range(1i64..6)))
}

fn exponent<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    Rational::new(rng.random_range(lo..hi), rng.random_range(1i64..4))
}

/// Up to four terms with exponents in `[-4, 10)`.
pub fn lc<R: Rng>(rng: &mut R, trunc: Truncation) -> LcNumber {
    let n = rng.random_range(0..5);
    trunc.from_terms((0..n).map(|_| (exponent(rng, -4, 10), coefficient(rng, trunc))))
}

pub fn nonzero_lc<R: Rng>(rng: &mut R, trunc: Truncation) -> LcNumber {
    loop {
        let x = lc(rng, trunc);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Non-negative exponents only.
pub fn finite_lc<R: Rng>(rng: &mut R, trunc: Truncation) -> LcNumber {
    let n = rng.random_range(0..5);
    trunc.from_terms((0..n).map(|_| (exponent(rng, 0, 10), coefficient(rng, trunc))))
}

/// A positive infinitesimal `c d^q` with `q` in `{1/2, 1, 3/2, 2}`.
pub fn positive_infinitesimal<R: Rng>(rng: &mut R, trunc: Truncation) -> LcNumber {
    let q = Rational::new(rng.random_range(1i64..5), 2);
    trunc.monomial(trunc.coerce(Real::ratio(rng.random_range(1i64..10), rng.random_range(1i64..4))), q)
}

/// An infinitesimal of either sign, or zero.
pub fn infinitesimal<R: Rng>(rng: &mut R, trunc: Truncation) -> LcNumber {
    match rng.random_range(0..3) {
        0 => trunc.zero(),
        1 => positive_infinitesimal(rng, trunc),
        _ => -positive_infinitesimal(rng, trunc),
    }
}

/// A generated finite union with the standard parts of its endpoints.
#[derive(Clone, Debug)]
pub struct GenSet {
    pub set: MeasurableSet,
    /// `(a, b)` with endpoints `a/DEN` and `b/DEN` after taking standard parts.
    pub st_ends: Vec<(i64, i64)>,
}

impl GenSet {
    /// Sum of standard lengths, `DEN` times `m_L`.
    pub fn length_numerator(&self) -> i64 {
        self.st_ends.iter().map(|(a, b)| b - a).sum()
    }
}

/// Up to six disjoint intervals, some of infinitesimal length, some touching
/// after standard parts.
pub fn measurable_set<R: Rng>(rng: &mut R, trunc: Truncation) -> GenSet {
    let mut at_num = rng.random_range(-24i64..24);
    let mut at = trunc.ratio(at_num, DEN);
    let mut intervals = Vec::new();
    let mut st_ends = Vec::new();
    let mut first = true;
    for _ in 0..rng.random_range(0..7) {
        let gap = if first { 0 } else { rng.random_range(0i64..4) };
        let lo = if first {
            &at + &infinitesimal(rng, trunc)
        } else {
            &at + &(&trunc.ratio(gap, DEN) + &positive_infinitesimal(rng, trunc))
        };
        first = false;
        let lo_num = at_num + gap;
        let len = rng.random_range(0i64..6);
        let eps = if len == 0 {
            if rng.random_bool(0.5) {
                trunc.zero()
            } else {
                positive_infinitesimal(rng, trunc)
            }
        } else {
            infinitesimal(rng, trunc)
        };
        let hi = &lo + &(&trunc.ratio(len, DEN) + &eps);
        let degenerate = hi == lo;
        let lo_closed = degenerate || rng.random_bool(0.7);
        let hi_closed = degenerate || rng.random_bool(0.7);
        intervals.push(IntervalLc::new(lo, hi.clone(), lo_closed, hi_closed).expect("ordered endpoints"));
        st_ends.push((lo_num, lo_num + len));
        at = hi;
        at_num = lo_num + len;
    }
    let set = MeasurableSet::new(trunc, intervals, None).expect("generated intervals are disjoint");
    GenSet { set, st_ends }
}

/// A union of up to six real intervals with endpoints `k/60`; overlaps are
/// allowed. Returns the set and `60 * lebesgue` computed independently.
pub fn real_set<R: Rng>(rng: &mut R) -> (RealSet, i64) {
    const D: i64 = 60;
    let mut raw = Vec::new();
    for _ in 0..rng.random_range(1..7) {
        let a = rng.random_range(-120i64..120);
        let b = a + rng.random_range(0i64..90);
        raw.push((a, b, rng.random_bool(0.5), rng.random_bool(0.5)));
    }
    let intervals = raw
        .iter()
        .map(|&(a, b, lc, hc)| {
            let (lc, hc) = if a == b { (true, true) } else { (lc, hc) };
            RealInterval::new(Real::ratio(a, D), Real::ratio(b, D), lc, hc).expect("ordered endpoints")
        })
        .collect();
    (RealSet::union_of(intervals), union_length(raw.iter().map(|&(a, b, _, _)| (a, b))))
}

/// Total length of a union of closed integer intervals.
pub fn union_length<I: IntoIterator<Item = (i64, i64)>>(parts: I) -> i64 {
    let mut v: Vec<(i64, i64)> = parts.into_iter().collect();
    v.sort();
    let mut total = 0;
    let mut cur: Option<(i64, i64)> = None;
    for (a, b) in v {
        cur = match cur {
            Some((s, e)) if a <= e => Some((s, e.max(b))),
            Some((s, e)) => {
                total += e - s;
                Some((a, b))
            }
            None => Some((a, b)),
        };
    }
    total + cur.map_or(0, |(s, e)| e - s)
}

/// Contiguous non-negative step function on up to eight pieces, with
/// `sum st(v) st(l)` as an exact oracle over denominator `DEN * 4`.
pub fn nonnegative_steps<R: Rng>(rng: &mut R, trunc: Truncation) -> (Vec<(IntervalLc, LcNumber)>, Real) {
    let mut at = trunc.ratio(rng.random_range(-12i64..12), DEN);
    let mut steps = Vec::new();
    let mut oracle = Real::zero();
    for _ in 0..rng.random_range(1..9) {
        let len = rng.random_range(0i64..6);
        let hi = &at + &(&trunc.ratio(len, DEN) + &positive_infinitesimal(rng, trunc));
        let n = rng.random_range(0i64..9);
        let v = if n == 0 {
            if rng.random_bool(0.5) {
                trunc.zero()
            } else {
                positive_infinitesimal(rng, trunc)
            }
        } else {
            &trunc.ratio(n, 4) + &infinitesimal(rng, trunc)
        };
        oracle = &oracle + &Real::ratio(n * len, 4 * DEN);
        let lo_closed = steps.is_empty();
        steps.push((IntervalLc::new(at.clone(), hi.clone(), lo_closed, true).expect("ordered endpoints"), v));
        at = hi;
    }
    (steps, oracle)
}

/// Coefficients of a random polynomial of degree below six.
pub fn poly<R: Rng>(rng: &mut R) -> Vec<f64> {
    (0..rng.random_range(1..7)).map(|_| rng.random_range(-3.0..3.0)).collect()
}

pub fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_length_merges() {
        assert_eq!(union_length([(0, 2), (1, 3), (5, 6), (6, 6)]), 4);
        assert_eq!(union_length([]), 0);
    }

    #[test]
    fn generators_are_reproducible() {
        let t = Truncation::exact(16);
        let a = measurable_set(&mut rng(7, 3), t);
        let b = measurable_set(&mut rng(7, 3), t);
        assert_eq!(a.set, b.set);
        assert_eq!(a.st_ends, b.st_ends);
    }

    #[test]
    fn generated_sets_match_their_standard_ends() {
        let t = Truncation::exact(16);
        let mut r = rng(1, 0);
        for _ in 0..200 {
            let g = measurable_set(&mut r, t);
            assert_eq!(g.set.ml_measure(), civita_core::ExtReal::Finite(Real::ratio(g.length_numerator(), DEN)));
        }
    }

    #[test]
    fn horner_evaluates() {
        assert_eq!(horner(&[1.0, 2.0, 3.0], 2.0), 17.0);
    }
}
