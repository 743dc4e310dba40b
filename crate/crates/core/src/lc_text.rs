//! Text format for Levi-Civita numbers: `c0*d^q0 + c1*d^q1 + ...`.
//!
//! Coefficients are decimals (optionally with an `e` exponent) or `p/q`
//! rationals; exponents are integers or `p/q`, optionally parenthesised.
//! `d^1/2` reads as `d^(1/2)`. A coefficient of one may be omitted.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lc::{LcNumber, Truncation};
use crate::real::Real;
use crate::Rational;

impl fmt::Display for LcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (q, c)) in self.terms().iter().enumerate() {
            let neg = c.signum() < 0;
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if q.is_zero() {
                write!(f, "{}", mag)?;
                continue;
            }
            if mag != Real::one() {
                write!(f, "{}*", mag)?;
            }
            write!(f, "d")?;
            if *q != Rational::one() {
                write!(f, "^{}", q)?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.to_string() })
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }
}

/// Parses an unsigned decimal or scientific literal into an exact rational.
pub(crate) fn decimal_to_rational(text: &str) -> Option<BigRational> {
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let mut digits = String::new();
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

fn parse_coefficient(cur: &mut Cursor<'_>, trunc: &Truncation) -> Result<Real> {
    let start = cur.pos;
    let int = cur.digits();
    let mut is_decimal = false;
    if cur.peek() == Some(b'.') {
        cur.pos += 1;
        cur.digits();
        is_decimal = true;
    }
    if int.is_empty() && cur.pos == start + 1 {
        return cur.err("expected digits");
    }
    if matches!(cur.peek(), Some(b'e' | b'E')) {
        let save = cur.pos;
        cur.pos += 1;
        if matches!(cur.peek(), Some(b'+' | b'-')) {
            cur.pos += 1;
        }
        if cur.digits().is_empty() {
            cur.pos = save;
        } else {
            is_decimal = true;
        }
    }
    let text = &cur.src[start..cur.pos];
    if !is_decimal {
        // `p/q` rational coefficient
        let save = cur.pos;
        if cur.peek() == Some(b'/') {
            cur.pos += 1;
            let den = cur.digits();
            if den.is_empty() {
                cur.pos = save;
            } else {
                let n: BigInt = text.parse().map_err(|_| parse_error(start, "bad integer"))?;
                let m: BigInt = den.parse().map_err(|_| parse_error(start, "bad integer"))?;
                if m.is_zero() {
                    return Err(parse_error(start, "zero denominator"));
                }
                return Ok(trunc.coerce(Real::Exact(BigRational::new(n, m))));
            }
        }
    }
    if trunc.is_exact() {
        decimal_to_rational(text)
            .map(Real::Exact)
            .ok_or_else(|| parse_error(start, "bad number"))
    } else {
        text.parse::<f64>()
            .map(Real::Float)
            .map_err(|_| parse_error(start, "bad number"))
    }
}

fn parse_error(offset: usize, message: &str) -> Error {
    Error::Parse { offset, message: message.to_string() }
}

/// Parses `[-]p[/q]` or `([-]p[/q])` as an exponent.
pub(crate) fn parse_exponent_literal(src: &str, pos: &mut usize) -> Result<Rational> {
    let mut cur = Cursor { src, pos: *pos };
    let paren = cur.eat(b'(');
    cur.skip_ws();
    let neg = cur.peek() == Some(b'-');
    if neg {
        cur.pos += 1;
    }
    let start = cur.pos;
    let p = cur.digits();
    if p.is_empty() {
        return cur.err("expected exponent");
    }
    let p: i64 = p.parse().map_err(|_| parse_error(start, "exponent too large"))?;
    let mut den = 1i64;
    if cur.peek() == Some(b'/') {
        let save = cur.pos;
        cur.pos += 1;
        let m = cur.digits();
        if m.is_empty() {
            cur.pos = save;
        } else {
            den = m.parse().map_err(|_| parse_error(save, "exponent too large"))?;
            if den == 0 {
                return Err(parse_error(save, "zero denominator"));
            }
        }
    }
    if paren && !cur.eat(b')') {
        return cur.err("expected ')'");
    }
    *pos = cur.pos;
    Ok(Rational::new(if neg { -p } else { p }, den))
}

pub(crate) fn parse(trunc: &Truncation, text: &str) -> Result<LcNumber> {
    let mut cur = Cursor { src: text, pos: 0 };
    let mut terms: Vec<(Rational, Real)> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            if first {
                return cur.err("empty number");
            }
            break;
        }
        let mut negative = false;
        if cur.eat(b'-') {
            negative = true;
        } else if cur.eat(b'+') {
        } else if !first {
            return cur.err("expected '+' or '-'");
        }
        first = false;
        cur.skip_ws();
        let (coef, has_d) = match cur.peek() {
            Some(b'd') => (Real::one(), true),
            Some(b'0'..=b'9' | b'.') => {
                let c = parse_coefficient(&mut cur, trunc)?;
                let star = cur.eat(b'*');
                if star {
                    cur.skip_ws();
                    if cur.peek() != Some(b'd') {
                        return cur.err("expected 'd' after '*'");
                    }
                }
                (c, star)
            }
            _ => return cur.err("expected a coefficient or 'd'"),
        };
        let mut exponent = Rational::zero();
        if has_d {
            cur.pos += 1;
            exponent = Rational::one();
            if cur.eat(b'^') {
                exponent = parse_exponent_literal(text, &mut cur.pos)?;
            }
        }
        let coef = if negative { -coef } else { coef };
        terms.push((exponent, coef));
    }
    Ok(trunc.from_terms(terms))
}

/// Exact rational rendering helper used by serializers.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.is_negative() {
        alloc::format!("-{}/{}", -q.numer(), q.denom())
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_terms() {
        let t = Truncation::exact(16);
        let x = t.int(3) + t.d_pow(Rational::new(1, 2)) - t.int(2) * t.d();
        assert_eq!(x.to_string(), "3 + d^1/2 - 2*d");
        assert_eq!(t.d().inv().unwrap().to_string(), "d^-1");
        assert_eq!(t.zero().to_string(), "0");
        assert_eq!((-t.ratio(1, 3) * t.d()).to_string(), "-1/3*d");
    }

    #[test]
    fn parses_forms() {
        let t = Truncation::exact(16);
        assert_eq!(t.parse("1+d").unwrap(), t.one() + t.d());
        assert_eq!(t.parse("2*d^-1/2").unwrap(), t.int(2) * t.d_pow(Rational::new(-1, 2)));
        assert_eq!(t.parse("d^(1/2)").unwrap(), t.d_pow(Rational::new(1, 2)));
        assert_eq!(t.parse("0.1").unwrap(), t.ratio(1, 10));
        assert_eq!(t.parse("-3/4*d + 1.5e2").unwrap(), t.int(150) - t.ratio(3, 4) * t.d());
        assert_eq!(t.parse(" - d ").unwrap(), -t.d());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let t = Truncation::exact(16);
        match t.parse("1 + x") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {:?}", other),
        }
        assert!(t.parse("").is_err());
        assert!(t.parse("1 2").is_err());
        assert!(t.parse("1/0").is_err());
    }

    #[test]
    fn float_mode_parse() {
        let t = Truncation::default();
        let x = t.parse("0.1 + 2.5*d").unwrap();
        assert_eq!(x.coeff(Rational::zero()), Real::Float(0.1));
    }
}
