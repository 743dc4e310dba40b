//! Dirac-like functions built from polynomial bumps and their pairing with
//! extensions of real functions.
//!
//! `delta(x) = c (1 - ((x - r) / h)^2)^(k+1)` on `[r - h, r + h]`, where `c`
//! makes the integral over the support exactly 1.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::extension::{ExtensionFn, Order};
use crate::interval::IntervalLc;
use crate::lc::{ExtReal, LcNumber};
use crate::real::Real;
use crate::series::{taylor_shift, PiecewiseFn, PowerSeriesFn};

/// `int_{-1}^{1} (1 - u^2)^(k+1) du` as an exact rational.
pub fn bump_integral(k: u32) -> BigRational {
    // I_n = 2n / (2n + 1) * I_{n-1}, I_0 = 2
    let mut acc = BigRational::from_integer(BigInt::from(2));
    for n in 1..=(k as i64 + 1) {
        acc *= BigRational::new(BigInt::from(2 * n), BigInt::from(2 * n + 1));
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSpec {
    center: LcNumber,
    half_width: LcNumber,
    smoothness: u32,
    /// `1 / B(k)`; the bump's leading constant is this divided by `h`.
    normalization: BigRational,
}

impl DeltaSpec {
    pub fn center(&self) -> &LcNumber {
        &self.center
    }

    pub fn half_width(&self) -> &LcNumber {
        &self.half_width
    }

    pub fn smoothness(&self) -> u32 {
        self.smoothness
    }

    pub fn normalization(&self) -> &BigRational {
        &self.normalization
    }

    pub fn support(&self) -> IntervalLc {
        IntervalLc::closed(&self.center - &self.half_width, &self.center + &self.half_width)
            .expect("half width is positive")
    }

    /// Bump coefficients in powers of `x - r`.
    fn coefficients(&self) -> Result<Vec<LcNumber>> {
        let trunc = self.center.truncation();
        let n = self.smoothness as i64 + 1;
        let c = &trunc.constant(Real::from(self.normalization.clone())) * &self.half_width.inv()?;
        let inv_h2 = self.half_width.powi(-2)?;
        let mut out = vec![trunc.zero(); 2 * n as usize + 1];
        let mut power = c;
        let mut binom = BigRational::from_integer(BigInt::from(1));
        for j in 0..=n {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out[2 * j as usize] = power.scale(&Real::from(binom.clone() * BigInt::from(sign)));
            power = &power * &inv_h2;
            binom *= BigRational::new(BigInt::from(n - j), BigInt::from(j + 1));
        }
        Ok(out)
    }

    /// The bump as a simple function on its support.
    pub fn bump(&self) -> Result<PowerSeriesFn> {
        PowerSeriesFn::new(self.support(), self.center.clone(), self.coefficients()?)
    }
}

/// Builds the bump of smoothness `k` at `r` with half width `h`.
pub fn make_delta(r: &LcNumber, h: &LcNumber, k: u32) -> Result<(DeltaSpec, PiecewiseFn)> {
    if r.truncation() != h.truncation() {
        return Err(Error::TruncationMismatch);
    }
    if h.signum() <= 0 || !h.is_infinitesimal() {
        return Err(Error::InvalidDelta(alloc::format!("half width {} is not a positive infinitesimal", h)));
    }
    if !r.is_finite() {
        return Err(Error::InvalidDelta(alloc::format!("center {} is infinite", r)));
    }
    let b = bump_integral(k);
    let spec = DeltaSpec {
        center: r.clone(),
        half_width: h.clone(),
        smoothness: k,
        normalization: BigRational::from_integer(BigInt::from(1)) / b,
    };
    let f = PiecewiseFn::new(vec![spec.bump()?])?;
    Ok((spec, f))
}

/// Outcome of pairing a delta (or one of its derivatives) with a function.
#[derive(Clone, Debug, PartialEq)]
pub struct Pairing {
    pub value: f64,
    /// `(-1)^m f^(m)(st r)` from symbolic differentiation.
    pub expected: f64,
    pub residual: f64,
    /// The integral `int delta^(m) T` computed without integrating by parts.
    pub direct: f64,
    /// Sum of the boundary terms produced by integrating by parts.
    pub boundary: f64,
}

impl Pairing {
    pub fn within(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

fn finite_value(x: &LcNumber) -> Result<f64> {
    match x.standard_part() {
        ExtReal::Finite(v) => Ok(v.to_f64()),
        _ => Err(Error::InvalidArgument(alloc::format!("pairing produced the infinite value {}", x))),
    }
}

/// `ext^j f` near `st r`, re-expanded in powers of `x - r`.
fn local_polynomial(delta: &DeltaSpec, f: &ExtensionFn) -> Result<(f64, PowerSeriesFn)> {
    let trunc = delta.center.truncation();
    let r0 = match delta.center.standard_part() {
        ExtReal::Finite(v) => v,
        _ => return Err(Error::CenterOutsideDomain),
    };
    let r0f = r0.to_f64();
    if !f.contains_real(r0f) {
        return Err(Error::CenterOutsideDomain);
    }
    let degree = match (f.order, delta.half_width.lambda()) {
        (Order::Finite(j), _) => j as usize,
        // powers of h past the window are invisible
        (Order::Infinite, Some(l)) => (trunc.window() / l).floor().to_integer().max(0) as usize,
        (Order::Infinite, None) => 0,
    };
    let jet = f.coefficients(r0f, degree)?;
    let coeffs: Vec<_> = jet.into_iter().map(|c| trunc.constant(Real::Float(c))).collect();
    let shift = &delta.center - &trunc.constant(r0);
    let shifted = taylor_shift(&coeffs, &shift);
    let poly = PowerSeriesFn::new(delta.support(), delta.center.clone(), shifted)?;
    Ok((r0f, poly))
}

/// `int delta * ext f` over the support, compared with `f(st r)`.
pub fn pair(delta: &DeltaSpec, f: &ExtensionFn) -> Result<Pairing> {
    pair_derivative(delta, 0, f)
}

/// `int delta^(m) * ext^j f` over the support, integrated by parts `m` times
/// and compared with `(-1)^m f^(m)(st r)`.
pub fn pair_derivative(delta: &DeltaSpec, m: u32, f: &ExtensionFn) -> Result<Pairing> {
    if m > delta.smoothness {
        return Err(Error::InsufficientSmoothness { derivative: m, smoothness: delta.smoothness });
    }
    let (r0, poly) = local_polynomial(delta, f)?;
    let support = delta.support();
    let bump = delta.bump()?;

    // derivatives of the bump and of the Taylor polynomial
    let mut bump_d = vec![bump.clone()];
    let mut poly_d = vec![poly.clone()];
    for _ in 0..m {
        bump_d.push(bump_d.last().unwrap().derivative());
        poly_d.push(poly_d.last().unwrap().derivative());
    }
    let m = m as usize;

    let moved = bump.mul(&poly_d[m])?.integral(&support)?;
    let moved = if m.is_multiple_of(2) { moved } else { -moved };

    // [delta^(m-1-i) T^(i)] at both ends, alternating in sign
    let trunc = delta.center.truncation();
    let mut boundary = trunc.zero();
    for i in 0..m {
        let g = bump_d[m - 1 - i].mul(&poly_d[i])?;
        let jump = &g.eval_on_closure(support.hi())? - &g.eval_on_closure(support.lo())?;
        boundary = if i % 2 == 0 { &boundary + &jump } else { &boundary - &jump };
    }
    let total = &moved + &boundary;
    let direct = bump_d[m].mul(&poly)?.integral(&support)?;

    let value = finite_value(&total)?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let expected = sign * f.base.diff_n(m as u32).eval(r0)?;
    Ok(Pairing {
        value,
        expected,
        residual: (value - expected).abs(),
        direct: finite_value(&direct)?,
        boundary: finite_value(&boundary)?,
    })
}
