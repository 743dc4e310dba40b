//! Adaptive Gauss-Kronrod (7/15) quadrature with a global error queue.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::expr::RealExpr;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Evaluation budget shared by one call.
pub const MAX_EVALUATIONS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Ok(Segment { a, b, value: kronrod * half, error: ((kronrod - gauss) * half).abs() })
}

/// Integrates a closure over `[a, b]` to absolute accuracy `tol`.
pub fn integrate<F: FnMut(f64) -> Result<f64>>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(Error::InvalidArgument(alloc::format!("bad quadrature bounds [{}, {}]", a, b)));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let first = gk15(&mut f, a, b)?;
    let mut evaluations = 15;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    while error > tol {
        if evaluations + 30 > MAX_EVALUATIONS {
            return Err(Error::QuadratureBudget { evaluations, error_estimate: error });
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval can no longer be split in floating point
            return Err(Error::QuadratureBudget { evaluations, error_estimate: error });
        }
        let left = gk15(&mut f, worst.a, mid)?;
        let right = gk15(&mut f, mid, worst.b)?;
        evaluations += 30;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // re-sum occasionally to stop drift in the running total
        if heap.len() % 64 == 0 {
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    let value = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    Ok(Quadrature { value, error, evaluations })
}

/// Integral of a real expression over `[a, b]`.
pub fn quad(e: &RealExpr, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    integrate(|x| e.eval(x), a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use core::f64::consts::PI;

    #[test]
    fn closed_forms() {
        let q = quad(&parse("sin(x)").unwrap(), 0.0, PI, 1e-10).unwrap();
        assert!((q.value - 2.0).abs() <= 1e-10);
        let q = quad(&parse("x^3 - x").unwrap(), 0.0, 1.0, 1e-12).unwrap();
        assert!((q.value + 0.25).abs() <= 1e-12);
        let q = quad(&parse("7").unwrap(), -1.0, 2.5, 1e-12).unwrap();
        assert!((q.value - 24.5).abs() <= 1e-12);
    }

    #[test]
    fn peaked_integrand() {
        // atan(100) - atan(-100) over a sharp Lorentzian
        let q = quad(&parse("100/(1 + (100*x)^2)").unwrap(), -1.0, 1.0, 1e-10).unwrap();
        let want = 2.0 * libm::atan(100.0);
        assert!((q.value - want).abs() <= 1e-9, "{} vs {}", q.value, want);
    }

    #[test]
    fn domain_errors_propagate() {
        assert!(matches!(quad(&parse("ln(x)").unwrap(), -1.0, 1.0, 1e-8), Err(Error::Domain(_))));
    }

    #[test]
    fn unreachable_tolerance_exhausts_budget() {
        let r = quad(&parse("sin(1/x)").unwrap(), 1e-3, 1.0, 0.0);
        assert!(matches!(r, Err(Error::QuadratureBudget { .. })));
    }
}
