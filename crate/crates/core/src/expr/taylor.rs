//! Truncated Taylor arithmetic on `f64` coefficients.
//!
//! A jet `[c0, c1, ..., cn]` stands for `sum c_i * t^i`, so `c_i = f^(i)(r) / i!`
//! when the jet of `f` is propagated from the seed `[r, 1, 0, ...]`.

use alloc::vec;
use alloc::vec::Vec;

use super::RealExpr;
use crate::error::{Error, Result};

pub type Jet = Vec<f64>;

fn mul(a: &[f64], b: &[f64]) -> Jet {
    let n = a.len();
    (0..n)
        .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
        .collect()
}

fn div(a: &[f64], b: &[f64]) -> Result<Jet> {
    if b[0] == 0.0 {
        return Err(Error::Domain("division by zero".into()));
    }
    let n = a.len();
    let mut c = vec![0.0; n];
    for k in 0..n {
        let s: f64 = (1..=k).map(|j| b[j] * c[k - j]).sum();
        c[k] = (a[k] - s) / b[0];
    }
    Ok(c)
}

fn exp(u: &[f64]) -> Jet {
    let n = u.len();
    let mut e = vec![0.0; n];
    e[0] = libm::exp(u[0]);
    for k in 1..n {
        let s: f64 = (1..=k).map(|j| j as f64 * u[j] * e[k - j]).sum();
        e[k] = s / k as f64;
    }
    e
}

fn ln(u: &[f64]) -> Result<Jet> {
    if u[0] <= 0.0 {
        return Err(Error::Domain(alloc::format!("ln({})", u[0])));
    }
    let n = u.len();
    let mut l = vec![0.0; n];
    l[0] = libm::log(u[0]);
    for k in 1..n {
        let s: f64 = (1..k).map(|j| j as f64 * l[j] * u[k - j]).sum();
        l[k] = (u[k] - s / k as f64) / u[0];
    }
    Ok(l)
}

fn sin_cos(u: &[f64]) -> (Jet, Jet) {
    let n = u.len();
    let mut s = vec![0.0; n];
    let mut c = vec![0.0; n];
    s[0] = libm::sin(u[0]);
    c[0] = libm::cos(u[0]);
    for k in 1..n {
        let mut ss = 0.0;
        let mut cc = 0.0;
        for j in 1..=k {
            ss += j as f64 * u[j] * c[k - j];
            cc += j as f64 * u[j] * s[k - j];
        }
        s[k] = ss / k as f64;
        c[k] = -cc / k as f64;
    }
    (s, c)
}

fn powr(u: &[f64], a: f64) -> Result<Jet> {
    if u[0] < 0.0 || (u[0] == 0.0 && a <= 0.0) {
        return Err(Error::Domain(alloc::format!("{}^{}", u[0], a)));
    }
    let n = u.len();
    let mut p = vec![0.0; n];
    p[0] = libm::pow(u[0], a);
    if u[0] == 0.0 {
        // u^a is not smooth at 0 for non-integral a
        if n > 1 {
            return Err(Error::Differentiability(alloc::format!("x^{} at 0", a)));
        }
        return Ok(p);
    }
    for k in 1..n {
        let s: f64 = (1..=k)
            .map(|j| ((a + 1.0) * j as f64 - k as f64) * u[j] * p[k - j])
            .sum();
        p[k] = s / (k as f64 * u[0]);
    }
    Ok(p)
}

fn powi(u: &[f64], m: i32) -> Result<Jet> {
    let mut acc = vec![0.0; u.len()];
    acc[0] = 1.0;
    let mut base = u.to_vec();
    let mut e = m.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    if m < 0 {
        let mut one = vec![0.0; u.len()];
        one[0] = 1.0;
        return div(&one, &acc);
    }
    Ok(acc)
}

/// Normalised Taylor coefficients `f^(i)(r) / i!` for `i = 0..=order`.
pub fn taylor_coefficients(e: &RealExpr, r: f64, order: usize) -> Result<Jet> {
    let n = order + 1;
    let mut seed = vec![0.0; n];
    seed[0] = r;
    if n > 1 {
        seed[1] = 1.0;
    }
    let jet = propagate(e, &seed)?;
    if jet.iter().any(|c| !c.is_finite()) {
        return Err(Error::Differentiability(alloc::format!("non-finite derivative at {}", r)));
    }
    Ok(jet)
}

fn constant(v: f64, n: usize) -> Jet {
    let mut j = vec![0.0; n];
    j[0] = v;
    j
}

fn propagate(e: &RealExpr, seed: &[f64]) -> Result<Jet> {
    use RealExpr::*;
    let n = seed.len();
    Ok(match e {
        Num(_) | Rat(_) | Pi => constant(e.eval(0.0)?, n),
        Var => seed.to_vec(),
        Neg(a) => propagate(a, seed)?.into_iter().map(|c| -c).collect(),
        Add(a, b) => {
            let (x, y) = (propagate(a, seed)?, propagate(b, seed)?);
            x.iter().zip(&y).map(|(p, q)| p + q).collect()
        }
        Sub(a, b) => {
            let (x, y) = (propagate(a, seed)?, propagate(b, seed)?);
            x.iter().zip(&y).map(|(p, q)| p - q).collect()
        }
        Mul(a, b) => mul(&propagate(a, seed)?, &propagate(b, seed)?),
        Div(a, b) => div(&propagate(a, seed)?, &propagate(b, seed)?)?,
        PowI(a, m) => powi(&propagate(a, seed)?, *m)?,
        PowR(a, p) => powr(&propagate(a, seed)?, *p)?,
        Exp(a) => exp(&propagate(a, seed)?),
        Ln(a) => ln(&propagate(a, seed)?)?,
        Sin(a) => sin_cos(&propagate(a, seed)?).0,
        Cos(a) => sin_cos(&propagate(a, seed)?).1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn exp_coefficients() {
        let c = taylor_coefficients(&parse("exp(x)").unwrap(), 0.0, 4).unwrap();
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (a, b) in c.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn agrees_with_symbolic_derivatives() {
        let mut fact = 1.0;
        for src in ["sin(x)*exp(x)", "1/(1+x^2)", "ln(2 + x)", "x^(2.5)", "cos(x^2)/(3 - x)"] {
            let e = parse(src).unwrap();
            let r = 0.7;
            let c = taylor_coefficients(&e, r, 6).unwrap();
            fact = 1.0;
            for (i, ci) in c.iter().enumerate() {
                if i > 0 {
                    fact *= i as f64;
                }
                let want = e.diff_n(i as u32).eval(r).unwrap() / fact;
                assert!((ci - want).abs() <= 1e-10 * (1.0 + want.abs()), "{} i={} {} {}", src, i, ci, want);
            }
        }
        assert!(fact > 0.0);
    }

    #[test]
    fn fractional_power_at_zero() {
        let e = parse("x^(0.5)").unwrap();
        assert!(matches!(taylor_coefficients(&e, 0.0, 1), Err(Error::Differentiability(_))));
        assert!(taylor_coefficients(&e, 0.0, 0).is_ok());
    }
}
