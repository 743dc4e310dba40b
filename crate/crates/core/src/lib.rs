//! Exact and truncated arithmetic over the Levi-Civita field, the uniform
//! measures `m` and `m_L`, the real-valued M-integral, order-k extensions of
//! real functions and Dirac-like functions.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod distributions;
pub mod error;
pub mod expr;
pub mod extension;
pub mod integrate;
pub mod interval;
pub mod lc;
mod lc_text;
pub mod measure;
pub mod quad;
pub mod real;
pub mod series;

pub use distributions::{make_delta, pair, pair_derivative, DeltaSpec, Pairing};
pub use error::{Error, Result};
pub use expr::RealExpr;
pub use extension::{ExtensionFn, Order};
pub use integrate::{MIntegral, MIntegrand, Region, Route, Verdict};
pub use interval::IntervalLc;
pub use lc::{ExtReal, LcNumber, Magnitude, Truncation};
pub use lc_text::rational_to_string;
pub use measure::{MeasurableSet, RealInterval, RealSet, RectangleNd, TailCertificate};
pub use real::Real;
pub use series::{Coefficients, PiecewiseFn, PowerSeriesFn};

/// Exact rational used for exponents of `d`.
pub type Rational = num_rational::Rational64;
