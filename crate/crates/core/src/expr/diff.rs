//! Symbolic differentiation with light simplification (constant folding,
//! 0/1 absorption, constants pulled to the left of products).

use alloc::boxed::Box;

use super::RealExpr;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};

use crate::Rational;

fn as_const(e: &RealExpr) -> Option<f64> {
    match e {
        RealExpr::Num(v) => Some(*v),
        RealExpr::Rat(q) => Some(*q.numer() as f64 / *q.denom() as f64),
        _ => None,
    }
}

fn is_value(e: &RealExpr, v: f64) -> bool {
    as_const(e) == Some(v)
}

fn fold(a: &RealExpr, b: &RealExpr, rat: fn(Rational, Rational) -> Option<Rational>, num: fn(f64, f64) -> f64) -> Option<RealExpr> {
    match (a, b) {
        (RealExpr::Rat(p), RealExpr::Rat(q)) => rat(*p, *q).map(RealExpr::Rat),
        _ => Some(RealExpr::Num(num(as_const(a)?, as_const(b)?))),
    }
}

pub(super) fn add(a: RealExpr, b: RealExpr) -> RealExpr {
    if is_value(&a, 0.0) {
        return b;
    }
    if is_value(&b, 0.0) {
        return a;
    }
    if let Some(c) = fold(&a, &b, |p, q| p.checked_add(&q), |x, y| x + y) {
        return c;
    }
    if let RealExpr::Neg(inner) = b {
        return sub(a, *inner);
    }
    RealExpr::Add(Box::new(a), Box::new(b))
}

pub(super) fn sub(a: RealExpr, b: RealExpr) -> RealExpr {
    if is_value(&b, 0.0) {
        return a;
    }
    if is_value(&a, 0.0) {
        return neg(b);
    }
    if let Some(c) = fold(&a, &b, |p, q| p.checked_sub(&q), |x, y| x - y) {
        return c;
    }
    RealExpr::Sub(Box::new(a), Box::new(b))
}

pub(super) fn neg(a: RealExpr) -> RealExpr {
    match a {
        RealExpr::Num(v) => RealExpr::Num(-v),
        RealExpr::Rat(q) => RealExpr::Rat(-q),
        RealExpr::Neg(inner) => *inner,
        e => RealExpr::Neg(Box::new(e)),
    }
}

pub(super) fn mul(a: RealExpr, b: RealExpr) -> RealExpr {
    if is_value(&a, 0.0) || is_value(&b, 0.0) {
        return RealExpr::Num(0.0);
    }
    if is_value(&a, 1.0) {
        return b;
    }
    if is_value(&b, 1.0) {
        return a;
    }
    if is_value(&a, -1.0) {
        return neg(b);
    }
    if is_value(&b, -1.0) {
        return neg(a);
    }
    if let Some(c) = fold(&a, &b, |p, q| p.checked_mul(&q), |x, y| x * y) {
        return c;
    }
    if as_const(&b).is_some() {
        return mul(b, a);
    }
    if as_const(&a).is_some() {
        if let RealExpr::Mul(c, rest) = &b {
            if as_const(c).is_some() {
                return mul(mul(a, (**c).clone()), (**rest).clone());
            }
        }
    }
    match (a, b) {
        (RealExpr::Neg(x), y) => neg(mul(*x, y)),
        (x, RealExpr::Neg(y)) => neg(mul(x, *y)),
        (x, y) => RealExpr::Mul(Box::new(x), Box::new(y)),
    }
}

pub(super) fn div(a: RealExpr, b: RealExpr) -> RealExpr {
    if is_value(&a, 0.0) {
        return RealExpr::Num(0.0);
    }
    if is_value(&b, 1.0) {
        return a;
    }
    if !is_value(&b, 0.0) {
        if let Some(c) = fold(&a, &b, |p, q| if *q.numer() == 0 { None } else { p.checked_div(&q) }, |x, y| x / y) {
            return c;
        }
    }
    RealExpr::Div(Box::new(a), Box::new(b))
}

pub(super) fn powi(a: RealExpr, n: i32) -> RealExpr {
    match n {
        0 => RealExpr::Num(1.0),
        1 => a,
        _ => RealExpr::PowI(Box::new(a), n),
    }
}

pub(super) fn diff(e: &RealExpr) -> RealExpr {
    use RealExpr::*;
    match e {
        Num(_) | Rat(_) | Pi => Num(0.0),
        Var => Num(1.0),
        Neg(a) => neg(diff(a)),
        Add(a, b) => add(diff(a), diff(b)),
        Sub(a, b) => sub(diff(a), diff(b)),
        Mul(a, b) => add(mul(diff(a), (**b).clone()), mul((**a).clone(), diff(b))),
        Div(a, b) => {
            let top = sub(mul(diff(a), (**b).clone()), mul((**a).clone(), diff(b)));
            div(top, powi((**b).clone(), 2))
        }
        PowI(a, n) => mul(
            mul(Num(*n as f64), powi((**a).clone(), n - 1)),
            diff(a),
        ),
        PowR(a, p) => mul(mul(Num(*p), PowR(a.clone(), p - 1.0)), diff(a)),
        Exp(a) => mul(e.clone(), diff(a)),
        Ln(a) => div(diff(a), (**a).clone()),
        Sin(a) => mul(Cos(a.clone()), diff(a)),
        Cos(a) => neg(mul(Sin(a.clone()), diff(a))),
    }
}
