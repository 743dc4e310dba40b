use alloc::boxed::Box;
use alloc::string::ToString;

use super::RealExpr;
use crate::error::{Error, Result};
use crate::Rational;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

/// Parsed operand plus whether it was a bare integer literal (for `p/q` folding).
struct Operand {
    expr: RealExpr,
    int_literal: Option<i64>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: &str) -> Result<T> {
        Err(Error::Parse { offset, message: message.to_string() })
    }

    fn peek(&mut self) -> Option<u8> {
        while matches!(self.src.as_bytes().get(self.pos), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RealExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = RealExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = RealExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<RealExpr> {
        let first = self.unary()?;
        let mut lhs = first.expr;
        let mut lhs_int = first.int_literal;
        loop {
            if self.eat(b'*') {
                let rhs = self.unary()?;
                lhs = RealExpr::Mul(Box::new(lhs), Box::new(rhs.expr));
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                lhs = match (lhs_int, rhs.int_literal) {
                    (Some(p), Some(q)) if q != 0 => RealExpr::Rat(Rational::new(p, q)),
                    _ => RealExpr::Div(Box::new(lhs), Box::new(rhs.expr)),
                };
            } else {
                return Ok(lhs);
            }
            lhs_int = None;
        }
    }

    fn unary(&mut self) -> Result<Operand> {
        if self.eat(b'-') {
            let inner = self.unary()?;
            return Ok(match inner.expr {
                RealExpr::Num(v) => Operand {
                    expr: RealExpr::Num(-v),
                    int_literal: inner.int_literal.map(|n| -n),
                },
                e => Operand { expr: RealExpr::Neg(Box::new(e)), int_literal: None },
            });
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Operand> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let exponent = self.exponent()?;
        let boxed = Box::new(base.expr);
        let expr = if libm::trunc(exponent) == exponent && exponent.abs() <= i32::MAX as f64 {
            RealExpr::PowI(boxed, exponent as i32)
        } else if exponent.is_finite() {
            RealExpr::PowR(boxed, exponent)
        } else {
            return self.err(at, "non-finite exponent");
        };
        Ok(Operand { expr, int_literal: None })
    }

    fn exponent(&mut self) -> Result<f64> {
        let at = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        if self.eat(b'(') {
            let e = self.expr()?;
            if !self.eat(b')') {
                return self.err(self.pos, "expected ')'");
            }
            return match e.constant_value() {
                Some(v) => Ok(v),
                None => self.err(at, "exponent must be constant"),
            };
        }
        let neg = self.eat(b'-');
        let (v, int) = match self.number()? {
            Some(n) => n,
            None => return self.err(at, "expected exponent"),
        };
        let mut v = v;
        if let Some(p) = int {
            let save = self.pos;
            if self.eat(b'/') {
                match self.number()? {
                    Some((_, Some(q))) if q != 0 => v = p as f64 / q as f64,
                    _ => self.pos = save,
                }
            }
        }
        Ok(if neg { -v } else { v })
    }

    /// Unsigned decimal literal; returns the value and, for plain integers, the integer.
    fn number(&mut self) -> Result<Option<(f64, Option<i64>)>> {
        let _ = self.peek();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let mut integral = true;
        if end < bytes.len() && bytes[end] == b'.' {
            integral = false;
            end += 1;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
        }
        if end == start || &self.src[start..end] == "." {
            return Ok(None);
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            let digits_start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            if k > digits_start {
                integral = false;
                end = k;
            }
        }
        let text = &self.src[start..end];
        let value: f64 = match text.parse() {
            Ok(v) => v,
            Err(_) => return self.err(start, "bad number"),
        };
        self.pos = end;
        let int = if integral { text.parse::<i64>().ok() } else { None };
        Ok(Some((value, int)))
    }

    fn base(&mut self) -> Result<Operand> {
        let at = match self.peek() {
            Some(_) => self.pos,
            None => return self.err(self.pos, "unexpected end of input"),
        };
        if let Some((v, int)) = self.number()? {
            return Ok(Operand { expr: RealExpr::Num(v), int_literal: int });
        }
        if self.eat(b'(') {
            let e = self.expr()?;
            if !self.eat(b')') {
                return self.err(self.pos, "expected ')'");
            }
            return Ok(Operand { expr: e, int_literal: None });
        }
        let bytes = self.src.as_bytes();
        let mut end = at;
        while end < bytes.len() && bytes[end].is_ascii_alphabetic() {
            end += 1;
        }
        let ident = &self.src[at..end];
        let expr = match ident {
            "x" => {
                self.pos = end;
                RealExpr::Var
            }
            "pi" => {
                self.pos = end;
                RealExpr::Pi
            }
            "sin" | "cos" | "exp" | "ln" => {
                self.pos = end;
                if !self.eat(b'(') {
                    return self.err(self.pos, "expected '(' after function name");
                }
                let arg = Box::new(self.expr()?);
                if !self.eat(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                match ident {
                    "sin" => RealExpr::Sin(arg),
                    "cos" => RealExpr::Cos(arg),
                    "exp" => RealExpr::Exp(arg),
                    _ => RealExpr::Ln(arg),
                }
            }
            "" => return self.err(at, "expected an operand"),
            _ => return self.err(at, "unknown identifier"),
        };
        Ok(Operand { expr, int_literal: None })
    }
}

/// Parses an expression in the grammar documented on [`RealExpr`].
pub fn parse(text: &str) -> Result<RealExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err(p.pos, "unexpected trailing input");
    }
    Ok(e)
}
