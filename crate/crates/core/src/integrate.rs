//! The Levi-Civita integral of simple functions and the real-valued
//! M-integral for the classes where it has a closed form.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::distributions::{pair_derivative, DeltaSpec};
use crate::error::{Error, Result};
use crate::extension::ExtensionFn;
use crate::interval::IntervalLc;
use crate::lc::{ExtReal, LcNumber, Truncation};
use crate::measure::{rect_measure, MeasurableSet, RectangleNd};
use crate::quad::quad;
use crate::real::Real;
use crate::series::PiecewiseFn;
use crate::Rational;

/// Tolerance used by reports unless configured otherwise.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub enum MIntegrand {
    /// Simple function, with an optional bound on `|f|` used for set tails.
    PiecewiseSimple { f: PiecewiseFn, bound: Option<LcNumber> },
    Extension(ExtensionFn),
    /// `delta^(m) * ext f`.
    DeltaProduct { delta: DeltaSpec, f: ExtensionFn, m: u32 },
    StepLc(Vec<(IntervalLc, LcNumber)>),
    /// 0 on negatives and the monad of 0, 1 on appreciable positives.
    Locator,
}

impl MIntegrand {
    pub fn simple(f: PiecewiseFn) -> Self {
        MIntegrand::PiecewiseSimple { f, bound: None }
    }

    fn kind(&self) -> &'static str {
        match self {
            MIntegrand::PiecewiseSimple { .. } => "simple function",
            MIntegrand::Extension(_) => "extension",
            MIntegrand::DeltaProduct { .. } => "delta product",
            MIntegrand::StepLc(_) => "step function",
            MIntegrand::Locator => "locator",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Region {
    Measurable(MeasurableSet),
    /// `{x : lambda(x) >= q}` intersected with a window.
    Aq { q: Rational, window: IntervalLc },
    /// `{x : lambda(x) > q}` intersected with a window.
    Bq { q: Rational, window: IntervalLc },
    /// The finite elements of the field, `A(0)`.
    FinitePart,
    Full,
}

impl Region {
    fn kind(&self) -> &'static str {
        match self {
            Region::Measurable(_) => "measurable set",
            Region::Aq { .. } => "A(q)",
            Region::Bq { .. } => "B(q)",
            Region::FinitePart => "finite part",
            Region::Full => "whole field",
        }
    }
}

/// Which closed form licensed a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Standard part of the Levi-Civita integral of a simple function.
    SimpleStandardPart,
    /// Standard part of a finite step sum.
    StepSum,
    /// Real integral over the shadow of the region.
    Lifting,
    /// Symbolic pairing of a delta with a Taylor polynomial.
    DeltaPairing,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::SimpleStandardPart => "simple-standard-part",
            Route::StepSum => "step-sum",
            Route::Lifting => "lifting",
            Route::DeltaPairing => "delta-pairing",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MIntegral {
    pub value: ExtReal,
    pub route: Route,
    pub tolerance: f64,
    pub warnings: Vec<String>,
}

/// Levi-Civita integral of a simple function over a set.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleIntegral {
    pub value: LcNumber,
    /// Valuation of the bound on the tail's contribution.
    pub tail_order: Option<Rational>,
}

/// `sum_I int_I f` over the listed intervals of `A`.
pub fn integral_simple(f: &PiecewiseFn, set: &MeasurableSet, bound: Option<&LcNumber>) -> Result<SimpleIntegral> {
    let mut value = set.truncation().zero();
    for i in set.intervals() {
        let piece = f.piece_covering(i).ok_or(Error::Uncovered)?;
        value = value.checked_add(&piece.integral(i)?)?;
    }
    let tail_order = match set.tail() {
        None => None,
        Some(t) => {
            let b = bound.ok_or(Error::TailUnbounded)?;
            let order = b.lambda().map_or(t.bound_exponent(), |l| l + t.bound_exponent());
            if order <= Rational::from_integer(0) {
                return Err(Error::TailNotInfinitesimal(order));
            }
            Some(order)
        }
    };
    Ok(SimpleIntegral { value, tail_order })
}

fn unsupported(f: &MIntegrand, region: &Region) -> Error {
    Error::Unsupported(alloc::format!("{} over {}", f.kind(), region.kind()))
}

/// The real M-integral for the supported integrand/region pairs.
pub fn m_integral(f: &MIntegrand, region: &Region, tol: f64) -> Result<MIntegral> {
    let report = |value, route, warnings| Ok(MIntegral { value, route, tolerance: tol, warnings });
    match (f, region) {
        (MIntegrand::PiecewiseSimple { f: g, bound }, Region::Measurable(set)) => {
            let s = integral_simple(g, set, bound.as_ref())?;
            let warnings = match s.tail_order {
                Some(q) => vec![alloc::format!("tail contribution is O(d^{}) and vanishes under st", q)],
                None => Vec::new(),
            };
            report(s.value.standard_part(), Route::SimpleStandardPart, warnings)
        }
        (MIntegrand::StepLc(steps), Region::Measurable(set)) => {
            report(step_integral(steps, set)?.standard_part(), Route::StepSum, Vec::new())
        }
        (MIntegrand::Extension(e), Region::Measurable(set)) => lifting(e, set, tol),
        (MIntegrand::DeltaProduct { delta, f: g, m }, Region::Measurable(set))
            if set.intervals().iter().any(|i| delta.support().within_hull_of(i)) =>
        {
            report(ExtReal::Finite(Real::Float(pair_derivative(delta, *m, g)?.value)), Route::DeltaPairing, Vec::new())
        }
        (MIntegrand::DeltaProduct { delta, f: g, m }, Region::Full | Region::FinitePart) => {
            report(ExtReal::Finite(Real::Float(pair_derivative(delta, *m, g)?.value)), Route::DeltaPairing, Vec::new())
        }
        _ => Err(unsupported(f, region)),
    }
}

fn step_integral(steps: &[(IntervalLc, LcNumber)], set: &MeasurableSet) -> Result<LcNumber> {
    let trunc = set.truncation();
    let mut total = trunc.zero();
    let mut largest = trunc.zero();
    for (piece, v) in steps {
        largest = largest.max_of(&v.abs());
        for i in set.intervals() {
            if let Some(common) = piece.intersect(i) {
                total = total.checked_add(&v.checked_mul(&common.length())?)?;
            }
        }
    }
    if let Some(t) = set.tail() {
        let order = largest.lambda().map_or(t.bound_exponent(), |l| l + t.bound_exponent());
        if order <= Rational::from_integer(0) {
            return Err(Error::TailNotInfinitesimal(order));
        }
    }
    Ok(total)
}

fn lifting(e: &ExtensionFn, set: &MeasurableSet, tol: f64) -> Result<MIntegral> {
    if !set.ml_measure().is_finite() {
        return Err(Error::Unsupported("extension over a set of infinite measure".into()));
    }
    let shadow = set.shadow()?;
    let mut warnings = Vec::new();
    if shadow.tail_omitted {
        warnings.push("tail has infinitesimal measure and finite values; it does not contribute".into());
    }
    let pieces = shadow.intervals.intervals();
    let share = tol / pieces.len().max(1) as f64;
    let mut value = 0.0;
    for k in pieces {
        let (a, b) = (k.lo.to_f64(), k.hi.to_f64());
        if !(e.contains_real(a) && e.contains_real(b)) {
            return Err(Error::NotNearstandard);
        }
        // the order-k extension needs f to be C^k on the interval
        for r in [a, 0.5 * (a + b), b] {
            e.coefficients(r, 0)?;
        }
        value += quad(&e.base, a, b, share)?.value;
    }
    Ok(MIntegral { value: ExtReal::Finite(Real::Float(value)), route: Route::Lifting, tolerance: tol, warnings })
}

/// Verdict of a limit integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Verdict {
    Converged(f64),
    PosInf,
    NegInf,
    Oscillating,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Converged(v) => write!(f, "{}", v),
            Verdict::PosInf => f.write_str("+inf"),
            Verdict::NegInf => f.write_str("-inf"),
            Verdict::Oscillating => f.write_str("oscillating"),
        }
    }
}

/// Schedule and stopping rules for limit integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schedule {
    pub max_points: usize,
    /// Cauchy tolerance over the last three values.
    pub cauchy_tol: f64,
    /// Values past this magnitude with monotone growth count as divergent.
    pub blowup: f64,
    /// Consecutive same-sign increments that do not shrink before the
    /// sequence is declared divergent.
    pub stall_run: usize,
    pub tol: f64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { max_points: 60, cauchy_tol: 1e-8, blowup: 1e12, stall_run: 8, tol: DEFAULT_TOL }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub verdict: Verdict,
    /// `(t, window integral)` in schedule order.
    pub trace: Vec<(f64, f64)>,
    pub tolerance: f64,
}

impl LimitReport {
    pub fn value(&self) -> ExtReal {
        match self.verdict {
            Verdict::Converged(v) => ExtReal::Finite(Real::Float(v)),
            Verdict::PosInf => ExtReal::PosInf,
            Verdict::NegInf => ExtReal::NegInf,
            Verdict::Oscillating => ExtReal::Finite(Real::Float(f64::NAN)),
        }
    }
}

/// Window `[-s, s]` clipped to `window` (or unclipped when absent).
fn clipped(s: &LcNumber, window: Option<&IntervalLc>) -> Option<IntervalLc> {
    let sym = IntervalLc::closed(-s, s.clone()).ok()?;
    match window {
        Some(w) => sym.intersect(w),
        None => Some(sym),
    }
}

/// `lim int_{W_t} f` over the growing windows of an `A(q)`, `B(q)` or full
/// region.
pub fn m_integral_limit(f: &MIntegrand, region: &Region, trunc: Truncation, schedule: &Schedule) -> Result<LimitReport> {
    let mut trace = Vec::new();
    let mut values = Vec::new();
    for k in 0..schedule.max_points {
        let (t, s, window) = match region {
            Region::Aq { q, window } => {
                let t = libm::ldexp(1.0, k as i32);
                (t, &trunc.from_f64(t) * &trunc.d_pow(*q), Some(window))
            }
            Region::FinitePart => {
                let t = libm::ldexp(1.0, k as i32);
                (t, trunc.from_f64(t), None)
            }
            Region::Bq { q, window } => {
                // exponents approach q from above; 2^40 keeps rationals small
                let step = Rational::new(1, 1i64 << k.min(40));
                let e = q + step;
                (*e.numer() as f64 / *e.denom() as f64, trunc.d_pow(e), Some(window))
            }
            Region::Full => {
                let e = Rational::from_integer(-(1i64 << k.min(40)));
                (*e.numer() as f64, trunc.d_pow(e), None)
            }
            Region::Measurable(_) => {
                return Err(Error::InvalidArgument("limit integrals need an A(q), B(q) or full region".into()))
            }
        };
        let v = match clipped(&s, window) {
            None => 0.0,
            Some(w) => {
                let set = MeasurableSet::new(trunc, vec![w], None)?;
                m_integral(f, &Region::Measurable(set), schedule.tol)?.value.to_f64()
            }
        };
        trace.push((t, v));
        values.push(v);
        if let Some(verdict) = detect(&values, schedule) {
            return Ok(LimitReport { verdict, trace, tolerance: schedule.cauchy_tol });
        }
    }
    Err(Error::ScheduleExhausted { points: schedule.max_points })
}

fn detect(values: &[f64], s: &Schedule) -> Option<Verdict> {
    let n = values.len();
    let last = *values.last()?;
    if !last.is_finite() {
        return Some(if last > 0.0 { Verdict::PosInf } else { Verdict::NegInf });
    }
    if n >= 3 {
        let w = &values[n - 3..];
        if (w[1] - w[0]).abs() <= s.cauchy_tol && (w[2] - w[1]).abs() <= s.cauchy_tol {
            return Some(Verdict::Converged(last));
        }
    }
    let run = s.stall_run;
    if n < run + 1 {
        return None;
    }
    let inc: Vec<f64> = values[n - run - 1..].windows(2).map(|w| w[1] - w[0]).collect();
    let same_sign = inc.iter().all(|d| *d > 0.0) || inc.iter().all(|d| *d < 0.0);
    let monotone_blowup = same_sign && last.abs() > s.blowup;
    let stalled = same_sign && inc.windows(2).all(|w| w[1].abs() >= 0.99 * w[0].abs());
    if monotone_blowup || stalled {
        return Some(if inc[0] > 0.0 { Verdict::PosInf } else { Verdict::NegInf });
    }
    let alternating = inc.windows(2).all(|w| w[0] * w[1] < 0.0);
    if alternating && inc.windows(2).all(|w| w[1].abs() >= 0.99 * w[0].abs()) {
        return Some(Verdict::Oscillating);
    }
    None
}

/// The locator function.
pub fn locator(x: &LcNumber) -> LcNumber {
    let t = x.truncation();
    match x.standard_part() {
        ExtReal::Finite(r) if r.signum() > 0 => t.one(),
        ExtReal::PosInf => t.one(),
        _ => t.zero(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FtcReport {
    /// `st(F(b) - F(a))`.
    pub lhs: ExtReal,
    /// `int_a^b F'`, when the derivative has a supported M-integral.
    pub rhs: Option<ExtReal>,
    pub consistent: bool,
    /// Whether `F` and `F'` lie in the supported integrable fragment.
    pub measurable: bool,
    pub tolerance: f64,
    pub note: Option<String>,
}

/// Compares `st(F(b) - F(a))` with the M-integral of `F'`.
pub fn ftc_check(f: &MIntegrand, interval: &IntervalLc, tol: f64) -> FtcReport {
    let trunc = interval.lo().truncation();
    let (a, b) = (interval.lo(), interval.hi());
    let attempt = || -> Result<(ExtReal, Option<ExtReal>, bool)> {
        let whole = Region::Measurable(MeasurableSet::new(trunc, vec![interval.clone()], None)?);
        match f {
            MIntegrand::Locator => {
                // L' = 0 wherever it exists, so the derivative integrates to 0
                let lhs = (&locator(b) - &locator(a)).standard_part();
                let rhs = m_integral(&MIntegrand::StepLc(Vec::new()), &whole, tol)?.value;
                Ok((lhs, Some(rhs), false))
            }
            MIntegrand::PiecewiseSimple { f: g, .. } => {
                let piece = g.piece_covering(interval).ok_or(Error::Uncovered)?;
                let lhs = (&piece.eval_on_closure(b)? - &piece.eval_on_closure(a)?).standard_part();
                let dg = PiecewiseFn::new(g.pieces().iter().map(|p| p.derivative()).collect())?;
                let rhs = m_integral(&MIntegrand::simple(dg), &whole, tol)?.value;
                Ok((lhs, Some(rhs), true))
            }
            MIntegrand::Extension(e) => {
                let lhs = (&e.extend(b)? - &e.extend(a)?).standard_part();
                let rhs = m_integral(&MIntegrand::Extension(e.derivative()?), &whole, tol)?.value;
                Ok((lhs, Some(rhs), true))
            }
            other => Err(Error::Unsupported(alloc::format!("no derivative available for a {}", other.kind()))),
        }
    };
    match attempt() {
        Ok((lhs, rhs, measurable)) => {
            let consistent = match (&lhs, &rhs) {
                (ExtReal::Finite(x), Some(ExtReal::Finite(y))) => (x.to_f64() - y.to_f64()).abs() <= tol,
                _ => false,
            };
            FtcReport { lhs, rhs, consistent, measurable, tolerance: tol, note: None }
        }
        Err(e) => FtcReport {
            lhs: ExtReal::Finite(Real::Float(f64::NAN)),
            rhs: None,
            consistent: false,
            measurable: false,
            tolerance: tol,
            note: Some(alloc::format!("{}", e)),
        },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartsReport {
    /// `st(f(b) g(b) - f(a) g(a))`.
    pub boundary: f64,
    /// `int f' g + int f g'`.
    pub sum: f64,
    pub residual: f64,
    pub tolerance: f64,
}

/// Checks `st(f(b)g(b) - f(a)g(a)) = int f'g + int fg'` on one interval.
pub fn integrate_by_parts(f: &PiecewiseFn, g: &PiecewiseFn, interval: &IntervalLc, tol: f64) -> Result<PartsReport> {
    let fp = f.piece_covering(interval).ok_or(Error::Uncovered)?;
    let gp = g.piece_covering(interval).ok_or(Error::Uncovered)?;
    let (a, b) = (interval.lo(), interval.hi());
    let at = |x: &LcNumber| -> Result<LcNumber> { Ok(&fp.eval_on_closure(x)? * &gp.eval_on_closure(x)?) };
    let boundary = st_f64(&(&at(b)? - &at(a)?))?;
    let left = fp.derivative().mul(gp)?.integral(interval)?;
    let right = fp.mul(&gp.derivative())?.integral(interval)?;
    let sum = st_f64(&left)? + st_f64(&right)?;
    Ok(PartsReport { boundary, sum, residual: (boundary - sum).abs(), tolerance: tol })
}

fn st_f64(x: &LcNumber) -> Result<f64> {
    match x.standard_part() {
        ExtReal::Finite(v) => Ok(v.to_f64()),
        _ => Err(Error::InvalidArgument(alloc::format!("{} is infinite", x))),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpigraphReport {
    /// `m_L^2` of the epigraph of `f+` minus that of `f-`.
    pub value: ExtReal,
    /// `sum st(v) st(l)`.
    pub step_sum: ExtReal,
    pub consistent: bool,
}

/// L-integral of a step function as the planar measure of its epigraph.
pub fn epigraph_l_integral(steps: &[(IntervalLc, LcNumber)], trunc: Truncation) -> Result<EpigraphReport> {
    let base = MeasurableSet::new(trunc, steps.iter().map(|(i, _)| i.clone()).collect(), None)?;
    if !base.ml_measure().is_finite() {
        return Err(Error::InvalidArgument("step function base must have finite measure".into()));
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut step_sum = ExtReal::zero();
    for (i, v) in steps {
        let height = match v.abs().standard_part() {
            ExtReal::Finite(_) => v.abs(),
            _ => return Err(Error::InvalidArgument(alloc::format!("step value {} is infinite", v))),
        };
        let l = i.length().standard_part();
        let sv = v.standard_part();
        step_sum = step_sum.checked_add(&l.scale(sv.finite().expect("finite step value")))?;
        if v.is_zero() {
            continue;
        }
        let rect = RectangleNd::new(vec![i.clone(), IntervalLc::closed(trunc.zero(), height)?])?;
        if v.signum() > 0 {
            pos.push(rect);
        } else {
            neg.push(rect);
        }
    }
    let value = rect_measure(&pos)?.checked_add(&rect_measure(&neg)?.neg())?;
    let consistent = value == step_sum;
    Ok(EpigraphReport { value, step_sum, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::extension::Order;
    use crate::series::PowerSeriesFn;

    fn t() -> Truncation {
        Truncation::exact(16)
    }

    fn iv(a: LcNumber, b: LcNumber) -> IntervalLc {
        IntervalLc::closed(a, b).unwrap()
    }

    fn set(parts: Vec<IntervalLc>) -> MeasurableSet {
        MeasurableSet::new(t(), parts, None).unwrap()
    }

    fn poly(lo: LcNumber, hi: LcNumber, c: &[i64]) -> PiecewiseFn {
        let t = lo.truncation();
        let p = PowerSeriesFn::new(iv(lo.clone(), hi), lo, c.iter().map(|&n| t.int(n)).collect()).unwrap();
        PiecewiseFn::new(vec![p]).unwrap()
    }

    #[test]
    fn simple_integral_examples() {
        let t = t();
        let one = poly(t.zero(), t.one() + t.d(), &[1]);
        let a = set(vec![iv(t.zero(), t.one() + t.d())]);
        assert_eq!(integral_simple(&one, &a, None).unwrap().value, t.one() + t.d());

        let sq = poly(t.zero(), t.one(), &[0, 0, 1]);
        let halves = MeasurableSet::new(
            t,
            vec![IntervalLc::new(t.zero(), t.ratio(1, 2), true, false).unwrap(), iv(t.ratio(1, 2), t.one())],
            None,
        )
        .unwrap();
        assert_eq!(integral_simple(&sq, &halves, None).unwrap().value, t.ratio(1, 3));

        let x = poly(t.zero(), t.d(), &[0, 1]);
        let got = integral_simple(&x, &set(vec![iv(t.zero(), t.d())]), None).unwrap().value;
        assert_eq!(got, t.ratio(1, 2) * t.d() * t.d());

        assert_eq!(integral_simple(&x, &set(vec![iv(t.zero(), t.one())]), None).unwrap_err(), Error::Uncovered);
    }

    #[test]
    fn tails_need_bounds() {
        let t = t();
        let tail = crate::measure::TailCertificate::new(Rational::from_integer(2), "d^2 tail").unwrap();
        let a = MeasurableSet::new(t, vec![iv(t.zero(), t.one())], Some(tail)).unwrap();
        let f = poly(t.zero(), t.one(), &[1]);
        assert_eq!(integral_simple(&f, &a, None).unwrap_err(), Error::TailUnbounded);
        let ok = integral_simple(&f, &a, Some(&t.one())).unwrap();
        assert_eq!(ok.tail_order, Some(Rational::from_integer(2)));
        let big = t.d().powi(-3).unwrap();
        assert!(matches!(integral_simple(&f, &a, Some(&big)), Err(Error::TailNotInfinitesimal(_))));
    }

    #[test]
    fn m_integral_examples() {
        let t = Truncation::default();
        let sin = ExtensionFn::new(parse("sin(x)").unwrap(), Order::Finite(2), 0.0, 4.0).unwrap();
        let pi = t.from_f64(core::f64::consts::PI);
        let region = Region::Measurable(MeasurableSet::new(t, vec![iv(t.zero(), pi)], None).unwrap());
        let r = m_integral(&MIntegrand::Extension(sin), &region, 1e-10).unwrap();
        assert!((r.value.to_f64() - 2.0).abs() <= 1e-10);
        assert_eq!(r.route, Route::Lifting);

        let e = Truncation::exact(16);
        let dconst = PowerSeriesFn::constant(iv(e.zero(), e.one()), e.d()).unwrap();
        let f = MIntegrand::simple(PiecewiseFn::new(vec![dconst]).unwrap());
        let unit = Region::Measurable(set(vec![iv(e.zero(), e.one())]));
        assert_eq!(m_integral(&f, &unit, DEFAULT_TOL).unwrap().value, ExtReal::zero());

        let recip = ExtensionFn::new(parse("x^(-1)").unwrap(), Order::Finite(1), 1.0, f64::INFINITY).unwrap();
        let w = Region::Measurable(MeasurableSet::new(t, vec![iv(t.one(), t.int(10))], None).unwrap());
        let r = m_integral(&MIntegrand::Extension(recip), &w, 1e-12).unwrap();
        assert!((r.value.to_f64() - libm::log(10.0)).abs() <= 1e-10);
    }

    #[test]
    fn unsupported_pairs_are_loud() {
        let t = t();
        let unit = Region::Measurable(set(vec![iv(t.zero(), t.one())]));
        assert!(matches!(m_integral(&MIntegrand::Locator, &unit, 1e-9), Err(Error::Unsupported(_))));
        let sin = ExtensionFn::new(parse("sin(x)").unwrap(), Order::Finite(0), -1.0, 1.0).unwrap();
        let r = m_integral(&MIntegrand::Extension(sin), &Region::Full, 1e-9);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    fn power(a: &str) -> MIntegrand {
        let e = parse(&alloc::format!("x^({})", a)).unwrap();
        MIntegrand::Extension(ExtensionFn::new(e, Order::Finite(1), 1.0, f64::INFINITY).unwrap())
    }

    fn a0() -> (Truncation, Region) {
        let t = Truncation::default();
        let window = iv(t.one(), t.d().inv().unwrap());
        (t, Region::Aq { q: Rational::from_integer(0), window })
    }

    #[test]
    fn power_limits() {
        let (t, region) = a0();
        let s = Schedule::default();
        let r = m_integral_limit(&power("-2"), &region, t, &s).unwrap();
        match r.verdict {
            Verdict::Converged(v) => assert!((v - 1.0).abs() <= 1e-6, "{}", v),
            v => panic!("{:?}", v),
        }
        assert_eq!(m_integral_limit(&power("-1"), &region, t, &s).unwrap().verdict, Verdict::PosInf);
        assert_eq!(m_integral_limit(&power("-1/2"), &region, t, &s).unwrap().verdict, Verdict::PosInf);
    }

    #[test]
    fn zero_limit_is_zero() {
        let (t, region) = a0();
        let zero = MIntegrand::StepLc(Vec::new());
        let r = m_integral_limit(&zero, &region, t, &Schedule::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Converged(0.0));
        let full = m_integral_limit(&zero, &Region::Full, t, &Schedule::default()).unwrap();
        assert_eq!(full.verdict, Verdict::Converged(0.0));
    }

    #[test]
    fn ftc_examples() {
        let t = t();
        let sq = MIntegrand::simple(poly(t.zero(), t.one(), &[0, 0, 1]));
        let r = ftc_check(&sq, &iv(t.zero(), t.one()), 1e-10);
        assert!(r.consistent && r.measurable);
        assert_eq!(r.lhs, ExtReal::Finite(Real::one()));

        let r = ftc_check(&MIntegrand::Locator, &iv(t.int(-1), t.one()), 1e-10);
        assert_eq!(r.lhs, ExtReal::Finite(Real::one()));
        assert_eq!(r.rhs, Some(ExtReal::zero()));
        assert!(!r.measurable && !r.consistent);

        let f = Truncation::default();
        let sin = ExtensionFn::new(parse("sin(x)").unwrap(), Order::Infinite, -4.0, 4.0).unwrap();
        let half_pi = f.from_f64(core::f64::consts::FRAC_PI_2);
        let r = ftc_check(&MIntegrand::Extension(sin), &iv(f.zero(), half_pi), 1e-10);
        assert!(r.consistent, "{:?}", r);
    }

    #[test]
    fn locator_values() {
        let t = t();
        assert!(locator(&t.d()).is_zero());
        assert!(locator(&-t.one()).is_zero());
        assert_eq!(locator(&t.ratio(1, 100)), t.one());
        assert_eq!(locator(&t.d().inv().unwrap()), t.one());
    }

    #[test]
    fn parts_examples() {
        let t = t();
        let x = poly(t.zero(), t.one(), &[0, 1]);
        let r = integrate_by_parts(&x, &x, &iv(t.zero(), t.one()), 1e-9).unwrap();
        assert_eq!((r.boundary, r.sum, r.residual), (1.0, 1.0, 0.0));
        let one = poly(t.zero(), t.one(), &[1]);
        let r = integrate_by_parts(&x, &one, &iv(t.ratio(1, 4), t.one()), 1e-9).unwrap();
        assert_eq!(r.boundary, 0.75);
        assert_eq!(r.sum, 0.75);

        let f = Truncation::default();
        let span = iv(f.zero(), f.from_f64(core::f64::consts::FRAC_PI_2));
        let s = PowerSeriesFn::from_expr(&parse("sin(x)").unwrap(), span.clone(), 40).unwrap();
        let c = PowerSeriesFn::from_expr(&parse("cos(x)").unwrap(), span.clone(), 40).unwrap();
        let r = integrate_by_parts(&PiecewiseFn::new(vec![s]).unwrap(), &PiecewiseFn::new(vec![c]).unwrap(), &span, 1e-9)
            .unwrap();
        assert!(r.residual <= 1e-9 && r.boundary.abs() <= 1e-12, "{:?}", r);
    }

    #[test]
    fn epigraph_examples() {
        let t = t();
        let r = epigraph_l_integral(&[(iv(t.zero(), t.one()), t.one())], t).unwrap();
        assert_eq!(r.value, ExtReal::Finite(Real::one()));
        let r = epigraph_l_integral(&[(iv(t.zero(), t.one()), t.d())], t).unwrap();
        assert_eq!(r.value, ExtReal::zero());
        let two = [
            (IntervalLc::new(t.zero(), t.one(), true, false).unwrap(), t.int(2)),
            (iv(t.one(), t.int(2)), t.one()),
        ];
        let r = epigraph_l_integral(&two, t).unwrap();
        assert_eq!(r.value, ExtReal::Finite(Real::int(3)));
        assert!(r.consistent);
        let signed = [(iv(t.zero(), t.one()), t.int(-2))];
        assert_eq!(epigraph_l_integral(&signed, t).unwrap().value, ExtReal::Finite(Real::int(-2)));
    }

    #[test]
    fn step_integrand_matches_epigraph() {
        let t = t();
        let steps = vec![(iv(t.zero(), t.one()), t.int(3) + t.d())];
        let unit = Region::Measurable(set(vec![iv(t.zero(), t.one())]));
        let r = m_integral(&MIntegrand::StepLc(steps.clone()), &unit, 1e-9).unwrap();
        assert_eq!(r.value, epigraph_l_integral(&steps, t).unwrap().value);
    }
}
