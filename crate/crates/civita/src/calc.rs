//! Calculator over Levi-Civita numbers.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' exponent)?
//! atom  := number | 'd' | '(' expr ')' | 'st' '(' expr ')' | 'lambda' '(' expr ')'
//! ```
//!
//! Exponents are integers or `p/q`, optionally parenthesized.

use std::fmt;

use civita_core::{Error, ExtReal, LcNumber, Rational, Real, Result, Truncation};

/// Result of a calculator expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Number(LcNumber),
    /// Result of `st(..)`.
    Extended(ExtReal),
    /// Result of `lambda(..)`; `None` for zero.
    Valuation(Option<Rational>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(x) => write!(f, "{}", x),
            Value::Extended(x) => write!(f, "{}", x),
            Value::Valuation(Some(q)) => write!(f, "{}", q),
            Value::Valuation(None) => f.write_str("+inf"),
        }
    }
}

pub fn evaluate(src: &str, trunc: Truncation) -> Result<Value> {
    let mut p = Parser { src, pos: 0, trunc };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    trunc: Truncation,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&self, v: Value) -> Result<LcNumber> {
        match v {
            Value::Number(x) => Ok(x),
            Value::Extended(ExtReal::Finite(r)) => Ok(self.trunc.constant(r)),
            Value::Valuation(Some(q)) => Ok(self.trunc.constant(Real::from_rational(q))),
            other => Err(Error::InvalidArgument(format!("cannot do arithmetic with {}", other))),
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let sign = if self.eat(b'+') {
                1
            } else if self.eat(b'-') {
                -1
            } else {
                return Ok(acc);
            };
            let (a, b) = (self.number(acc)?, self.term()?);
            let b = self.number(b)?;
            acc = Value::Number(if sign > 0 { a.checked_add(&b)? } else { a.checked_sub(&b)? });
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let mul = if self.eat(b'*') {
                true
            } else if self.eat(b'/') {
                false
            } else {
                return Ok(acc);
            };
            let (a, b) = (self.number(acc)?, self.unary()?);
            let b = self.number(b)?;
            acc = Value::Number(if mul { a.checked_mul(&b)? } else { a.checked_div(&b)? });
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat(b'-') {
            let v = self.unary()?;
            return Ok(match v {
                Value::Extended(x) => Value::Extended(x.neg()),
                v => Value::Number(-self.number(v)?),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let q = self.exponent()?;
        let x = self.number(base)?;
        let rooted = if *q.denom() == 1 { x } else { x.root(*q.denom() as u32)? };
        Ok(Value::Number(rooted.powi(*q.numer())?))
    }

    fn exponent(&mut self) -> Result<Rational> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let p = self.integer()?;
        let q = if self.eat(b'/') { self.integer()? } else { 1 };
        if paren {
            self.expect(b')')?;
        }
        if q == 0 {
            return Err(self.error("zero exponent denominator"));
        }
        Ok(Rational::new(if neg { -p } else { p }, q))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Parse { offset: start, message: "expected an integer".into() })
    }

    fn atom(&mut self) -> Result<Value> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == b'.') {
                    self.pos += 1;
                }
                let text = &self.src[start..self.pos];
                self.trunc
                    .parse(text)
                    .map(Value::Number)
                    .map_err(|_| Error::Parse { offset: start, message: format!("bad number '{}'", text) })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    "d" => Ok(Value::Number(self.trunc.d())),
                    "st" => {
                        self.expect(b'(')?;
                        let v = self.expr()?;
                        self.expect(b')')?;
                        Ok(Value::Extended(self.number(v)?.standard_part()))
                    }
                    "lambda" => {
                        self.expect(b'(')?;
                        let v = self.expr()?;
                        self.expect(b')')?;
                        Ok(Value::Valuation(self.number(v)?.lambda()))
                    }
                    name => Err(Error::Parse { offset: start, message: format!("unknown name '{}'", name) }),
                }
            }
            _ => Err(self.error("expected a number, 'd', 'st', 'lambda' or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Truncation {
        Truncation::exact(16)
    }

    fn eval(s: &str) -> String {
        evaluate(s, t()).unwrap().to_string()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(evaluate("(1 + d)^2", t()).unwrap(), Value::Number(t().one() + t().d() * t().int(2) + t().d() * t().d()));
        assert_eq!(evaluate("1/d", t()).unwrap(), Value::Number(t().d_pow(Rational::from_integer(-1))));
        assert_eq!(evaluate("d^(1/2) * d^1/2", t()).unwrap(), Value::Number(t().d()));
        assert_eq!(evaluate("2 - -3", t()).unwrap(), Value::Number(t().int(5)));
    }

    #[test]
    fn standard_part_and_valuation() {
        assert_eq!(eval("st(3 + d)"), "3");
        assert_eq!(eval("st(1/d)"), "+inf");
        assert_eq!(eval("st(-1/d)"), "-inf");
        assert_eq!(eval("lambda(d^3 + d^(1/2))"), "1/2");
        assert_eq!(eval("lambda(0)"), "+inf");
        assert_eq!(eval("st(1/3 + d) * 3"), "1");
    }

    #[test]
    fn errors() {
        assert!(matches!(evaluate("1 +", t()), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(evaluate("foo", t()), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(evaluate("1/0", t()), Err(Error::DivisionByZero)));
        assert!(matches!(evaluate("st(1/d) + 1", t()), Err(Error::InvalidArgument(_))));
        assert!(evaluate("(0 - d)^(1/2)", t()).is_err());
        assert!(evaluate("1 2", t()).is_err());
    }
}
