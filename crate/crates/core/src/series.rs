//! Simple functions: power series over Levi-Civita intervals.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::expr::taylor::taylor_coefficients;
use crate::expr::RealExpr;
use crate::interval::IntervalLc;
use crate::lc::{ExtReal, LcNumber, Truncation};
use crate::real::Real;

/// Default degree for series built from real expressions.
pub const DEFAULT_DEGREE: usize = 64;

/// Default number of terms a generated series may use before giving up.
pub const DEFAULT_TERM_BUDGET: usize = 4096;

pub type Generator = Arc<dyn Fn(usize) -> LcNumber + Send + Sync>;

#[derive(Clone)]
pub enum Coefficients {
    Finite(Vec<LcNumber>),
    /// Infinite series `n -> a_n`, summed until the partial sums stabilise.
    Generated { gen: Generator, budget: usize },
}

impl fmt::Debug for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Finite(c) => f.debug_tuple("Finite").field(c).finish(),
            Coefficients::Generated { budget, .. } => {
                f.debug_struct("Generated").field("budget", budget).finish_non_exhaustive()
            }
        }
    }
}

/// `sum a_n (x - center)^n` on an interval.
#[derive(Clone, Debug)]
pub struct PowerSeriesFn {
    interval: IntervalLc,
    center: LcNumber,
    coeffs: Coefficients,
}

impl PowerSeriesFn {
    pub fn new(interval: IntervalLc, center: LcNumber, coeffs: Vec<LcNumber>) -> Result<Self> {
        let trunc = interval.lo().truncation();
        if center.truncation() != trunc || coeffs.iter().any(|c| c.truncation() != trunc) {
            return Err(Error::TruncationMismatch);
        }
        Self::checked(interval, center, Coefficients::Finite(coeffs))
    }

    pub fn generated(interval: IntervalLc, center: LcNumber, gen: Generator, budget: usize) -> Result<Self> {
        if center.truncation() != interval.lo().truncation() {
            return Err(Error::TruncationMismatch);
        }
        Self::checked(interval, center, Coefficients::Generated { gen, budget })
    }

    fn checked(interval: IntervalLc, center: LcNumber, coeffs: Coefficients) -> Result<Self> {
        if !interval.contains(&center) {
            return Err(Error::OutOfInterval);
        }
        Ok(PowerSeriesFn { interval, center, coeffs })
    }

    /// Constant function on an interval, centred at its midpoint.
    pub fn constant(interval: IntervalLc, value: LcNumber) -> Result<Self> {
        let center = interval.midpoint();
        Self::new(interval, center, vec![value])
    }

    /// Taylor polynomial of `e` of the given degree, centred at the interval
    /// midpoint. Coefficients come from the jet at the midpoint's standard
    /// part and are shifted onto the midpoint when it is not real.
    pub fn from_expr(e: &RealExpr, interval: IntervalLc, degree: usize) -> Result<Self> {
        let trunc = interval.lo().truncation();
        let mid = interval.midpoint();
        let r = match mid.standard_part() {
            ExtReal::Finite(r) => r,
            _ => return Err(Error::InfiniteEndpoint),
        };
        let jet = taylor_coefficients(e, r.to_f64(), degree)?;
        let coeffs = jet.into_iter().map(|c| trunc.constant(Real::Float(c))).collect();
        let at_r = PowerSeriesFn {
            interval: interval.clone(),
            center: trunc.constant(r),
            coeffs: Coefficients::Finite(coeffs),
        };
        if at_r.center == mid {
            return Ok(at_r);
        }
        at_r.recenter(&mid)
    }

    pub fn interval(&self) -> &IntervalLc {
        &self.interval
    }

    pub fn center(&self) -> &LcNumber {
        &self.center
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeffs
    }

    pub fn truncation(&self) -> Truncation {
        self.center.truncation()
    }

    /// Finite coefficient list, if the series has one.
    pub fn finite_coeffs(&self) -> Option<&[LcNumber]> {
        match &self.coeffs {
            Coefficients::Finite(c) => Some(c),
            Coefficients::Generated { .. } => None,
        }
    }

    fn finite_or_unsupported(&self) -> Result<&[LcNumber]> {
        self.finite_coeffs()
            .ok_or_else(|| Error::Unsupported("operation needs a finite coefficient list".into()))
    }

    pub fn eval(&self, x: &LcNumber) -> Result<LcNumber> {
        if !self.interval.contains(x) {
            return Err(Error::OutOfInterval);
        }
        self.eval_on_closure(x)
    }

    /// Evaluation on the closure of the interval.
    pub fn eval_on_closure(&self, x: &LcNumber) -> Result<LcNumber> {
        if !(self.interval.lo().le(x) && x.le(self.interval.hi())) {
            return Err(Error::OutOfInterval);
        }
        let t = x.checked_sub(&self.center)?;
        let trunc = self.truncation();
        match &self.coeffs {
            Coefficients::Finite(c) => {
                let mut acc = trunc.zero();
                for a in c.iter().rev() {
                    acc = &(&acc * &t) + a;
                }
                Ok(acc)
            }
            Coefficients::Generated { gen, budget } => {
                let mut sum = trunc.zero();
                let mut power = trunc.one();
                let mut stable = 0;
                for n in 0..*budget {
                    if n > 0 {
                        power = &power * &t;
                    }
                    let next = &sum + &(&gen(n) * &power);
                    if (&next - &sum).is_zero() {
                        stable += 1;
                        if stable == 2 {
                            return Ok(next);
                        }
                    } else {
                        stable = 0;
                    }
                    sum = next;
                }
                Err(Error::SeriesNotConvergent { terms: *budget })
            }
        }
    }

    pub fn derivative(&self) -> PowerSeriesFn {
        let trunc = self.truncation();
        let coeffs = match &self.coeffs {
            Coefficients::Finite(c) => Coefficients::Finite(
                c.iter().enumerate().skip(1).map(|(n, a)| a * &trunc.int(n as i64)).collect(),
            ),
            Coefficients::Generated { gen, budget } => {
                let gen = gen.clone();
                Coefficients::Generated {
                    gen: Arc::new(move |n| &gen(n + 1) * &trunc.int(n as i64 + 1)),
                    budget: *budget,
                }
            }
        };
        PowerSeriesFn { interval: self.interval.clone(), center: self.center.clone(), coeffs }
    }

    /// Termwise antiderivative with constant term 0.
    pub fn antiderivative(&self) -> PowerSeriesFn {
        let trunc = self.truncation();
        let coeffs = match &self.coeffs {
            Coefficients::Finite(c) => {
                let mut out = Vec::with_capacity(c.len() + 1);
                out.push(trunc.zero());
                out.extend(c.iter().enumerate().map(|(n, a)| a * &trunc.ratio(1, n as i64 + 1)));
                Coefficients::Finite(out)
            }
            Coefficients::Generated { gen, budget } => {
                let gen = gen.clone();
                Coefficients::Generated {
                    gen: Arc::new(move |n| match n {
                        0 => trunc.zero(),
                        n => &gen(n - 1) * &trunc.ratio(1, n as i64),
                    }),
                    budget: *budget,
                }
            }
        };
        PowerSeriesFn { interval: self.interval.clone(), center: self.center.clone(), coeffs }
    }

    /// `F(hi) - F(lo)` for the antiderivative `F`; boundary flags are ignored.
    pub fn integral(&self, over: &IntervalLc) -> Result<LcNumber> {
        if !over.within_hull_of(&self.interval) {
            return Err(Error::OutOfInterval);
        }
        let f = self.antiderivative();
        Ok(&f.eval_on_closure(over.hi())? - &f.eval_on_closure(over.lo())?)
    }

    /// Re-expands a polynomial about a new centre inside the interval.
    pub fn recenter(&self, center: &LcNumber) -> Result<PowerSeriesFn> {
        if !self.interval.contains(center) {
            return Err(Error::OutOfInterval);
        }
        let shift = center - &self.center;
        let b = taylor_shift(self.finite_or_unsupported()?, &shift);
        Ok(PowerSeriesFn { interval: self.interval.clone(), center: center.clone(), coeffs: Coefficients::Finite(b) })
    }

    /// Same function restricted to a sub-interval containing the centre.
    pub fn restrict(&self, interval: IntervalLc) -> Result<PowerSeriesFn> {
        if !interval.within_hull_of(&self.interval) {
            return Err(Error::OutOfInterval);
        }
        if interval.contains(&self.center) {
            return Ok(PowerSeriesFn { interval, center: self.center.clone(), coeffs: self.coeffs.clone() });
        }
        let mid = interval.midpoint();
        let moved = self.recenter_hull(&mid)?;
        Ok(PowerSeriesFn { interval, center: mid, coeffs: moved })
    }

    fn recenter_hull(&self, center: &LcNumber) -> Result<Coefficients> {
        let widened = IntervalLc::closed(self.interval.lo().clone(), self.interval.hi().clone())?;
        let tmp = PowerSeriesFn { interval: widened, center: self.center.clone(), coeffs: self.coeffs.clone() };
        Ok(tmp.recenter(center)?.coeffs)
    }

    fn aligned(&self, other: &PowerSeriesFn) -> Result<(IntervalLc, Vec<LcNumber>, Vec<LcNumber>)> {
        let interval = self.interval.intersect(&other.interval).ok_or(Error::OutOfInterval)?;
        let a = self.restrict(interval.clone())?;
        let b = other.restrict(interval.clone())?;
        let b = if b.center == a.center { b } else { b.recenter(&a.center)? };
        Ok((interval, a.finite_or_unsupported()?.to_vec(), b.finite_or_unsupported()?.to_vec()))
    }

    /// Product on the common interval.
    pub fn mul(&self, other: &PowerSeriesFn) -> Result<PowerSeriesFn> {
        let (interval, a, b) = self.aligned(other)?;
        let center = if interval.contains(&self.center) { self.center.clone() } else { interval.midpoint() };
        if a.is_empty() || b.is_empty() {
            return PowerSeriesFn::new(interval, center, Vec::new());
        }
        let trunc = self.truncation();
        let mut c = vec![trunc.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] = &c[i + j] + &(x * y);
            }
        }
        PowerSeriesFn::new(interval, center, c)
    }

    /// Sum on the common interval.
    pub fn add(&self, other: &PowerSeriesFn) -> Result<PowerSeriesFn> {
        let (interval, mut a, b) = self.aligned(other)?;
        let center = if interval.contains(&self.center) { self.center.clone() } else { interval.midpoint() };
        if a.len() < b.len() {
            a.resize(b.len(), self.truncation().zero());
        }
        for (x, y) in a.iter_mut().zip(&b) {
            *x = &*x + y;
        }
        PowerSeriesFn::new(interval, center, a)
    }

    pub fn scale(&self, by: &LcNumber) -> Result<PowerSeriesFn> {
        let c = self.finite_or_unsupported()?.iter().map(|a| a * by).collect();
        PowerSeriesFn::new(self.interval.clone(), self.center.clone(), c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.finite_coeffs().map(|c| c.len().saturating_sub(1))
    }
}

/// Coefficients of `p(y + shift)` given those of `p(y)`.
pub fn taylor_shift(coeffs: &[LcNumber], shift: &LcNumber) -> Vec<LcNumber> {
    let mut b = coeffs.to_vec();
    // repeated synthetic division by (y + shift)
    let n = b.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let carry = &b[j + 1] * shift;
            b[j] = &b[j] + &carry;
        }
    }
    b
}

/// Simple functions on disjoint intervals, zero elsewhere.
#[derive(Clone, Debug)]
pub struct PiecewiseFn {
    pieces: Vec<PowerSeriesFn>,
}

impl PiecewiseFn {
    pub fn new(mut pieces: Vec<PowerSeriesFn>) -> Result<Self> {
        pieces.sort_by(|a, b| a.interval.lo().lc_cmp(b.interval.lo()));
        for w in pieces.windows(2) {
            if !w[0].interval.precedes(&w[1].interval) {
                return Err(Error::Overlap);
            }
        }
        Ok(PiecewiseFn { pieces })
    }

    pub fn pieces(&self) -> &[PowerSeriesFn] {
        &self.pieces
    }

    pub fn eval(&self, x: &LcNumber) -> Result<LcNumber> {
        match self.pieces.iter().find(|p| p.interval.contains(x)) {
            Some(p) => p.eval(x),
            None => Ok(x.truncation().zero()),
        }
    }

    /// The piece whose closure contains the interval.
    pub fn piece_covering(&self, interval: &IntervalLc) -> Option<&PowerSeriesFn> {
        self.pieces.iter().find(|p| interval.within_hull_of(&p.interval))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::Rational;

    fn closed(t: &Truncation, a: LcNumber, b: LcNumber) -> IntervalLc {
        let _ = t;
        IntervalLc::closed(a, b).unwrap()
    }

    fn poly(t: &Truncation, lo: i64, hi: i64, c: &[i64]) -> PowerSeriesFn {
        let i = closed(t, t.int(lo), t.int(hi));
        PowerSeriesFn::new(i, t.zero(), c.iter().map(|&n| t.int(n)).collect()).unwrap()
    }

    #[test]
    fn geometric_series_at_d() {
        let t = Truncation::exact(12);
        let i = closed(&t, t.ratio(-1, 2), t.ratio(1, 2));
        let one = t.one();
        let f = PowerSeriesFn::generated(i, t.zero(), Arc::new(move |_| one.clone()), 200).unwrap();
        let got = f.eval(&t.d()).unwrap();
        let want = (t.one() - t.d()).inv().unwrap();
        assert!(got.agrees_with(&want), "{} vs {}", got, want);
    }

    #[test]
    fn exponential_series_at_one() {
        let t = Truncation::default();
        let i = closed(&t, t.zero(), t.int(2));
        let f = PowerSeriesFn::generated(
            i,
            t.zero(),
            Arc::new(move |n| {
                let fact: f64 = (1..=n).map(|k| k as f64).product();
                t.from_f64(1.0 / fact)
            }),
            500,
        )
        .unwrap();
        let e = f.eval(&t.one()).unwrap().standard_part().to_f64();
        assert!((e - core::f64::consts::E).abs() <= 1e-12);
    }

    #[test]
    fn divergent_generator_is_rejected() {
        let t = Truncation::default();
        let i = closed(&t, t.zero(), t.int(3));
        let f = PowerSeriesFn::generated(i, t.zero(), Arc::new(move |_| t.one()), 50).unwrap();
        assert_eq!(f.eval(&t.int(2)).unwrap_err(), Error::SeriesNotConvergent { terms: 50 });
        assert_eq!(f.eval(&t.int(4)).unwrap_err(), Error::OutOfInterval);
    }

    #[test]
    fn derivative_and_antiderivative() {
        let t = Truncation::exact(16);
        let f = poly(&t, -1, 1, &[1, 1, 1, 1]);
        assert_eq!(f.derivative().finite_coeffs().unwrap(), &[t.int(1), t.int(2), t.int(3)][..]);
        let back = f.antiderivative().derivative();
        assert_eq!(back.finite_coeffs().unwrap(), f.finite_coeffs().unwrap());
        let g = poly(&t, -1, 1, &[0, 2]).antiderivative();
        assert_eq!(g.finite_coeffs().unwrap(), &[t.zero(), t.zero(), t.one()][..]);
        assert!(poly(&t, 0, 1, &[5]).derivative().finite_coeffs().unwrap().is_empty());
    }

    #[test]
    fn interval_integrals() {
        let t = Truncation::exact(16);
        let one = PowerSeriesFn::constant(closed(&t, t.zero(), t.int(2)), t.one()).unwrap();
        let r = one.integral(&closed(&t, t.zero(), t.one() + t.d())).unwrap();
        assert_eq!(r, t.one() + t.d());
        let sq = poly(&t, 0, 1, &[0, 0, 1]);
        assert_eq!(sq.integral(&closed(&t, t.zero(), t.one())).unwrap(), t.ratio(1, 3));
        let open = IntervalLc::new(t.zero(), t.one(), false, false).unwrap();
        assert_eq!(sq.integral(&open).unwrap(), t.ratio(1, 3));
        assert!(sq.integral(&closed(&t, t.zero(), t.int(2))).is_err());
    }

    #[test]
    fn log_series_integral() {
        let t = Truncation::exact(10);
        let i = closed(&t, t.ratio(-1, 2), t.ratio(1, 2));
        let one = t.one();
        let f = PowerSeriesFn::generated(i, t.zero(), Arc::new(move |_| one.clone()), 200).unwrap();
        let got = f.integral(&closed(&t, t.zero(), t.d())).unwrap();
        // window is lambda + depth = 11
        let want = t.from_terms((1..=11).map(|n| (Rational::from_integer(n), Real::ratio(1, n))));
        assert!(got.agrees_with(&want), "{}", got);
    }

    #[test]
    fn recentering_preserves_values() {
        let t = Truncation::exact(16);
        let f = poly(&t, -2, 2, &[3, -1, 0, 2]);
        let g = f.recenter(&(t.one() + t.d())).unwrap();
        for x in [t.zero(), t.ratio(1, 3), t.int(-2), t.d()] {
            assert!(f.eval(&x).unwrap().agrees_with(&g.eval(&x).unwrap()));
        }
    }

    #[test]
    fn from_expr_matches_function() {
        let t = Truncation::default();
        let f = PowerSeriesFn::from_expr(&parse("sin(x)").unwrap(), closed(&t, t.zero(), t.one()), 40).unwrap();
        assert_eq!(f.center(), &t.from_f64(0.5));
        let v = f.eval(&t.from_f64(0.9)).unwrap().standard_part().to_f64();
        assert!((v - libm::sin(0.9)).abs() < 1e-13);
        let g = PowerSeriesFn::from_expr(&parse("x^2").unwrap(), closed(&t, t.d(), t.d() * t.int(3)), 4).unwrap();
        assert_eq!(g.center(), &(t.d() * t.int(2)));
        assert!(g.eval(&t.d()).unwrap().agrees_with(&t.d().powi(2).unwrap()));
    }

    #[test]
    fn products_and_sums() {
        let t = Truncation::exact(16);
        let f = poly(&t, 0, 1, &[1, 1]);
        let g = poly(&t, 0, 1, &[-1, 1]);
        assert_eq!(f.mul(&g).unwrap().finite_coeffs().unwrap(), &[t.int(-1), t.zero(), t.one()][..]);
        assert_eq!(f.add(&g).unwrap().finite_coeffs().unwrap(), &[t.zero(), t.int(2)][..]);
    }

    #[test]
    fn piecewise_rules() {
        let t = Truncation::exact(16);
        let a = poly(&t, 0, 1, &[1]);
        let b = PowerSeriesFn::constant(closed(&t, t.one(), t.int(2)), t.int(2)).unwrap();
        assert_eq!(PiecewiseFn::new(vec![a.clone(), b.clone()]).unwrap_err(), Error::Overlap);
        let b = PowerSeriesFn::new(
            IntervalLc::new(t.one(), t.int(2), false, true).unwrap(),
            t.ratio(3, 2),
            vec![t.int(2)],
        )
        .unwrap();
        let p = PiecewiseFn::new(vec![b, a]).unwrap();
        assert_eq!(p.eval(&t.one()).unwrap(), t.one());
        assert_eq!(p.eval(&(t.one() + t.d())).unwrap(), t.int(2));
        assert_eq!(p.eval(&t.int(5)).unwrap(), t.zero());
    }
}
