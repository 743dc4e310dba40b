//! Real expressions in one variable `x`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | factor
//! factor   := base ('^' exponent)?
//! base     := number | 'x' | 'pi' | '(' expr ')' | func '(' expr ')'
//! func     := 'sin' | 'cos' | 'exp' | 'ln'
//! exponent := ['-'] number ['/' integer] | '(' expr ')'
//! ```
//!
//! An integer literal divided by an integer literal is kept as an exact
//! rational constant. Exponents must be constant; integral ones produce
//! [`RealExpr::PowI`], others [`RealExpr::PowR`].

mod diff;
mod parse;
mod render;
pub mod taylor;

use alloc::boxed::Box;

use crate::error::{Error, Result};
use crate::Rational;

pub use parse::parse;

#[derive(Clone, Debug, PartialEq)]
pub enum RealExpr {
    Num(f64),
    /// Exact rational literal `p/q`.
    Rat(Rational),
    Pi,
    Var,
    Neg(Box<RealExpr>),
    Add(Box<RealExpr>, Box<RealExpr>),
    Sub(Box<RealExpr>, Box<RealExpr>),
    Mul(Box<RealExpr>, Box<RealExpr>),
    /// Domain: the denominator must not vanish.
    Div(Box<RealExpr>, Box<RealExpr>),
    PowI(Box<RealExpr>, i32),
    /// Domain: positive base (or zero base with positive exponent).
    PowR(Box<RealExpr>, f64),
    Exp(Box<RealExpr>),
    /// Domain: positive argument.
    Ln(Box<RealExpr>),
    Sin(Box<RealExpr>),
    Cos(Box<RealExpr>),
}

impl RealExpr {
    pub fn var() -> Self {
        RealExpr::Var
    }

    pub fn num(v: f64) -> Self {
        RealExpr::Num(v)
    }

    /// Symbolic derivative with respect to `x`, simplified.
    pub fn diff(&self) -> RealExpr {
        diff::diff(self)
    }

    /// `n`-th symbolic derivative.
    pub fn diff_n(&self, n: u32) -> RealExpr {
        let mut e = self.clone();
        for _ in 0..n {
            e = e.diff();
        }
        e
    }

    /// Constant value if the expression does not mention `x`.
    pub fn constant_value(&self) -> Option<f64> {
        if self.mentions_var() {
            None
        } else {
            self.eval(0.0).ok()
        }
    }

    pub fn mentions_var(&self) -> bool {
        use RealExpr::*;
        match self {
            Var => true,
            Num(_) | Rat(_) | Pi => false,
            Neg(a) | PowI(a, _) | PowR(a, _) | Exp(a) | Ln(a) | Sin(a) | Cos(a) => a.mentions_var(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.mentions_var() || b.mentions_var(),
        }
    }

    /// True when built only from polynomial operations and `exp`, `sin`, `cos`,
    /// i.e. the function is entire.
    pub fn is_entire(&self) -> bool {
        use RealExpr::*;
        match self {
            Num(_) | Rat(_) | Pi | Var => true,
            Neg(a) | Exp(a) | Sin(a) | Cos(a) => a.is_entire(),
            PowI(a, n) => *n >= 0 && a.is_entire(),
            Add(a, b) | Sub(a, b) | Mul(a, b) => a.is_entire() && b.is_entire(),
            Div(_, b) if b.mentions_var() => false,
            Div(a, _) => a.is_entire(),
            PowR(a, _) | Ln(a) => !a.mentions_var(),
        }
    }

    /// Real evaluation at `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        use RealExpr::*;
        Ok(match self {
            Num(v) => *v,
            Rat(q) => *q.numer() as f64 / *q.denom() as f64,
            Pi => core::f64::consts::PI,
            Var => x,
            Neg(a) => -a.eval(x)?,
            Add(a, b) => a.eval(x)? + b.eval(x)?,
            Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Div(a, b) => {
                let den = b.eval(x)?;
                if den == 0.0 {
                    return Err(Error::Domain(alloc::format!("division by zero at x = {}", x)));
                }
                a.eval(x)? / den
            }
            PowI(a, n) => {
                let base = a.eval(x)?;
                if base == 0.0 && *n < 0 {
                    return Err(Error::Domain(alloc::format!("0^{} at x = {}", n, x)));
                }
                libm::pow(base, *n as f64)
            }
            PowR(a, p) => {
                let base = a.eval(x)?;
                if base < 0.0 || (base == 0.0 && *p <= 0.0) {
                    return Err(Error::Domain(alloc::format!("{}^{} at x = {}", base, p, x)));
                }
                libm::pow(base, *p)
            }
            Exp(a) => libm::exp(a.eval(x)?),
            Ln(a) => {
                let v = a.eval(x)?;
                if v <= 0.0 {
                    return Err(Error::Domain(alloc::format!("ln({}) at x = {}", v, x)));
                }
                libm::log(v)
            }
            Sin(a) => libm::sin(a.eval(x)?),
            Cos(a) => libm::cos(a.eval(x)?),
        })
    }
}

impl core::str::FromStr for RealExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
