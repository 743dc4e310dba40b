//! Order-k extensions of real functions to nearstandard Levi-Civita points:
//! `ext^k f(r + eps) = sum_{i <= k} f^(i)(r) eps^i / i!`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expr::taylor::taylor_coefficients;
use crate::expr::RealExpr;
use crate::lc::{ExtReal, LcNumber, Truncation};
use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    /// Full Taylor series; only for entire functions.
    Infinite,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionFn {
    pub base: RealExpr,
    pub order: Order,
    /// Closed real domain `[a, b]`.
    pub domain: (f64, f64),
}

impl ExtensionFn {
    pub fn new(base: RealExpr, order: Order, a: f64, b: f64) -> Result<Self> {
        if a.is_nan() || b.is_nan() || a > b {
            return Err(Error::InvalidInterval(alloc::format!("[{}, {}]", a, b)));
        }
        if order == Order::Infinite && !base.is_entire() {
            return Err(Error::Differentiability(
                "infinite order needs a polynomial or exp/sin/cos composition".into(),
            ));
        }
        Ok(ExtensionFn { base, order, domain: (a, b) })
    }

    /// The derivative's extension, one order lower.
    pub fn derivative(&self) -> Result<ExtensionFn> {
        let order = match self.order {
            Order::Finite(0) => {
                return Err(Error::Differentiability("order 0 extension has no derivative".into()))
            }
            Order::Finite(k) => Order::Finite(k - 1),
            Order::Infinite => Order::Infinite,
        };
        Ok(ExtensionFn { base: self.base.diff(), order, domain: self.domain })
    }

    pub fn contains_real(&self, r: f64) -> bool {
        self.domain.0 <= r && r <= self.domain.1
    }

    /// Taylor coefficients at the standard point `r`, as many as the order
    /// (or `fallback` for the infinite order).
    pub fn coefficients(&self, r: f64, fallback: usize) -> Result<Vec<f64>> {
        let n = match self.order {
            Order::Finite(k) => k as usize,
            Order::Infinite => fallback,
        };
        taylor_coefficients(&self.base, r, n)
    }

    /// Evaluates the extension at a nearstandard point of the domain.
    pub fn extend(&self, x: &LcNumber) -> Result<LcNumber> {
        let trunc = x.truncation();
        let r = match x.standard_part() {
            ExtReal::Finite(r) => r,
            _ => return Err(Error::NotNearstandard),
        };
        let r_f = r.to_f64();
        if !self.contains_real(r_f) {
            return Err(Error::NotNearstandard);
        }
        let eps = x - &trunc.constant(r);
        let terms = match (self.order, eps.lambda()) {
            (Order::Finite(k), _) => k as usize,
            (Order::Infinite, None) => 0,
            (Order::Infinite, Some(l)) => {
                // powers of eps past x's horizon are invisible
                let h = eps.horizon().unwrap_or_else(|| trunc.window());
                (h / l).floor().to_integer().max(0) as usize
            }
        };
        let coeffs = self.coefficients(r_f, terms)?;
        Ok(horner(&trunc, &coeffs, &eps))
    }
}

/// `sum c_i t^i` in Levi-Civita arithmetic.
pub(crate) fn horner(trunc: &Truncation, coeffs: &[f64], t: &LcNumber) -> LcNumber {
    let mut acc = trunc.zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * t) + &trunc.constant(Real::Float(*c));
    }
    acc
}
