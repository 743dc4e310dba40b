//! Real scalars that are either exact rationals or IEEE doubles.
//!
//! Exact values stay exact under `+ - * /`; as soon as a float takes part in
//! an operation the result is a float.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::Rational;

#[derive(Clone, Debug)]
pub enum Real {
    Exact(BigRational),
    Float(f64),
}

impl Real {
    pub fn zero() -> Self {
        Real::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Real::Exact(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Real::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Real::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Real::ratio(*q.numer(), *q.denom())
    }

    /// Exact dyadic copy of a finite double. Non-finite inputs stay floats.
    pub fn exact_from_f64(x: f64) -> Self {
        match BigRational::from_f64(x) {
            Some(q) => Real::Exact(q),
            None => Real::Float(x),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Real::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_zero(),
            Real::Float(x) => *x == 0.0,
        }
    }

    /// `|self| <= zeta`, the coefficient-zero test used by the field arithmetic.
    pub fn is_negligible(&self, zeta: f64) -> bool {
        match self {
            Real::Exact(q) => q.is_zero() || (zeta > 0.0 && q.abs().to_f64().is_some_and(|a| a <= zeta)),
            Real::Float(x) => x.abs() <= zeta,
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Real::Exact(q) => {
                if q.is_positive() {
                    1
                } else if q.is_negative() {
                    -1
                } else {
                    0
                }
            }
            Real::Float(x) => {
                if *x > 0.0 {
                    1
                } else if *x < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(q.abs()),
            Real::Float(x) => Real::Float(x.abs()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Real> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Real::Exact(q) => Real::Exact(q.recip()),
            Real::Float(x) => Real::Float(1.0 / x),
        })
    }

    pub fn powi(&self, n: i32) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(num_traits::pow::Pow::pow(q, n)),
            Real::Float(x) => Real::Float(libm::pow(*x, n as f64)),
        }
    }

    /// Positive real n-th root. Exact when the input is an exact perfect power.
    pub fn nth_root(&self, n: u32) -> Option<Real> {
        if self.signum() < 0 || n == 0 {
            return None;
        }
        if let Real::Exact(q) = self {
            let num = q.numer().nth_root(n);
            let den = q.denom().nth_root(n);
            if num.pow(n) == *q.numer() && den.pow(n) == *q.denom() {
                return Some(Real::Exact(BigRational::new(num, den)));
            }
        }
        Some(Real::Float(libm::pow(self.to_f64(), 1.0 / n as f64)))
    }

    /// The same value in float form.
    pub fn to_float(&self) -> Real {
        Real::Float(self.to_f64())
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Float(_) => None,
        }
    }
}

impl Default for Real {
    fn default() -> Self {
        Real::zero()
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real::Float(x)
    }
}

impl From<BigRational> for Real {
    fn from(q: BigRational) -> Self {
        Real::Exact(q)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<'a> $tr<&'a Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: &'a Real) -> Real {
                match (self, rhs) {
                    (Real::Exact(a), Real::Exact(b)) => Real::Exact(a $op b),
                    _ => Real::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $tr for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl<'a> Div<&'a Real> for &'a Real {
    type Output = Real;
    /// # Panics
    /// On exact division by zero.
    fn div(self, rhs: &'a Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a / b),
            _ => Real::Float(self.to_f64() / rhs.to_f64()),
        }
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        &self / &rhs
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(-q),
            Real::Float(x) => Real::Float(-x),
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => write!(f, "{}", q),
            Real::Float(x) => write!(f, "{}", x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_stays_exact() {
        let a = Real::ratio(1, 3);
        let b = Real::ratio(2, 3);
        assert_eq!(&a + &b, Real::one());
        assert!((&a * &b).is_exact());
    }

    #[test]
    fn float_contaminates() {
        let r = Real::ratio(1, 2) + Real::Float(0.25);
        assert!(!r.is_exact());
        assert_eq!(r.to_f64(), 0.75);
    }

    #[test]
    fn exact_roots() {
        assert_eq!(Real::ratio(4, 9).nth_root(2).unwrap(), Real::ratio(2, 3));
        assert!(!Real::int(2).nth_root(2).unwrap().is_exact());
        assert!(Real::int(-1).nth_root(3).is_none());
    }

    #[test]
    fn negligible() {
        assert!(Real::Float(1e-14).is_negligible(1e-13));
        assert!(!Real::ratio(1, 1_000_000).is_negligible(0.0));
        assert!(Real::zero().is_negligible(0.0));
    }
}
