use core::fmt::{self, Write};

use super::RealExpr;

fn prec(e: &RealExpr) -> u8 {
    use RealExpr::*;
    match e {
        Add(..) | Sub(..) => 1,
        Mul(..) | Div(..) | Rat(_) => 2,
        Neg(_) => 3,
        Num(v) if v.is_sign_negative() => 3,
        PowI(..) | PowR(..) => 4,
        _ => 5,
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &RealExpr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({})", e)
    } else {
        write!(f, "{}", e)
    }
}

fn integral_num(e: &RealExpr) -> Option<f64> {
    match e {
        RealExpr::Num(v) if libm::trunc(*v) == *v && v.abs() < 9.0e15 => Some(*v),
        _ => None,
    }
}

impl fmt::Display for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RealExpr::*;
        match self {
            Num(v) => write!(f, "{}", v),
            Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Pi => f.write_str("pi"),
            Var => f.write_char('x'),
            Neg(a) => {
                f.write_char('-')?;
                child(f, a, 3)
            }
            Add(a, b) => {
                child(f, a, 1)?;
                f.write_str(" + ")?;
                child(f, b, 2)
            }
            Sub(a, b) => {
                child(f, a, 1)?;
                f.write_str(" - ")?;
                child(f, b, 2)
            }
            Mul(a, b) => {
                child(f, a, 2)?;
                f.write_char('*')?;
                child(f, b, 3)
            }
            Div(a, b) => {
                // two integer literals would read back as a rational constant
                if let (Some(p), Some(_)) = (integral_num(a), integral_num(b)) {
                    write!(f, "{:?}", p)?;
                } else {
                    child(f, a, 2)?;
                }
                f.write_char('/')?;
                child(f, b, 3)
            }
            PowI(a, n) => {
                child(f, a, 5)?;
                write!(f, "^{}", n)
            }
            PowR(a, p) => {
                child(f, a, 5)?;
                write!(f, "^({:?})", p)
            }
            Exp(a) => write!(f, "exp({})", a),
            Ln(a) => write!(f, "ln({})", a),
            Sin(a) => write!(f, "sin({})", a),
            Cos(a) => write!(f, "cos({})", a),
        }
    }
}
