//! JSON wire formats (`schema: 1`) and text parsing of intervals.
//!
//! Levi-Civita numbers travel as text such as `"1 + 2*d^1/2"`; plain JSON
//! numbers are accepted on input. Endpoints that are not valid LC text are
//! read as real constant expressions such as `"pi/2"`.

use std::fs;

use civita_core::{
    ExtReal, IntervalLc, LcNumber, MeasurableSet, PiecewiseFn, PowerSeriesFn, Rational, Real, RealExpr, RealInterval,
    RealSet, TailCertificate, Truncation,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::AppError;

pub const SCHEMA: u32 = 1;

/// A scalar given as LC text or as a JSON number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Text(String),
}

impl Scalar {
    pub fn lc(&self, trunc: Truncation) -> Result<LcNumber, AppError> {
        match self {
            Scalar::Number(x) => finite_f64(*x).map(|x| trunc.from_f64(x)),
            Scalar::Text(s) => parse_lc(s, trunc),
        }
    }

    /// A real constant; rejects non-constant LC numbers.
    pub fn real(&self, trunc: Truncation) -> Result<Real, AppError> {
        let x = self.lc(trunc)?;
        if x.terms().iter().any(|(q, _)| *q != Rational::from_integer(0)) {
            return Err(AppError::Usage(format!("expected a real number, got {}", x)));
        }
        Ok(x.coeff(Rational::from_integer(0)))
    }
}

fn finite_f64(x: f64) -> Result<f64, AppError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(AppError::Usage(format!("non-finite number {}", x)))
    }
}

/// LC text, falling back to a real constant expression.
pub fn parse_lc(text: &str, trunc: Truncation) -> Result<LcNumber, AppError> {
    match trunc.parse(text) {
        Ok(x) => Ok(x),
        Err(lc_err) => match text.parse::<RealExpr>().ok().and_then(|e| e.constant_value()) {
            Some(v) if v.is_finite() => Ok(trunc.from_f64(v)),
            _ => Err(lc_err.into()),
        },
    }
}

fn default_closed() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntervalWire {
    Pair([Scalar; 2]),
    Object {
        lo: Scalar,
        hi: Scalar,
        #[serde(default = "default_closed")]
        lo_closed: bool,
        #[serde(default = "default_closed")]
        hi_closed: bool,
    },
}

impl IntervalWire {
    fn parts(&self) -> (&Scalar, &Scalar, bool, bool) {
        match self {
            IntervalWire::Pair([lo, hi]) => (lo, hi, true, true),
            IntervalWire::Object { lo, hi, lo_closed, hi_closed } => (lo, hi, *lo_closed, *hi_closed),
        }
    }

    pub fn to_lc(&self, trunc: Truncation) -> Result<IntervalLc, AppError> {
        let (lo, hi, lc, hc) = self.parts();
        Ok(IntervalLc::new(lo.lc(trunc)?, hi.lc(trunc)?, lc, hc)?)
    }

    pub fn to_real(&self, trunc: Truncation) -> Result<RealInterval, AppError> {
        let (lo, hi, lc, hc) = self.parts();
        Ok(RealInterval::new(lo.real(trunc)?, hi.real(trunc)?, lc, hc)?)
    }

    pub fn from_lc(i: &IntervalLc) -> Self {
        IntervalWire::Object {
            lo: Scalar::Text(i.lo().to_string()),
            hi: Scalar::Text(i.hi().to_string()),
            lo_closed: i.lo_closed(),
            hi_closed: i.hi_closed(),
        }
    }

    pub fn from_real(i: &RealInterval) -> Self {
        IntervalWire::Object {
            lo: Scalar::Text(i.lo.to_string()),
            hi: Scalar::Text(i.hi.to_string()),
            lo_closed: i.lo_closed,
            hi_closed: i.hi_closed,
        }
    }
}

/// Parses `[a, b]`, `(a, b]` and friends, or a JSON interval object.
pub fn parse_interval(text: &str, trunc: Truncation) -> Result<IntervalLc, AppError> {
    let s = text.trim();
    if s.starts_with('{') {
        return serde_json::from_str::<IntervalWire>(s)?.to_lc(trunc);
    }
    let bad = || AppError::Usage(format!("expected an interval like [a, b], got '{}'", text));
    let lo_closed = match s.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(bad()),
    };
    let hi_closed = match s.chars().last() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(bad()),
    };
    let inner = &s[1..s.len() - 1];
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 && split.is_none() => split = Some(i),
            ',' if depth == 0 => return Err(bad()),
            _ => {}
        }
    }
    let at = split.ok_or_else(bad)?;
    let lo = parse_lc(inner[..at].trim(), trunc)?;
    let hi = parse_lc(inner[at + 1..].trim(), trunc)?;
    Ok(IntervalLc::new(lo, hi, lo_closed, hi_closed)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailWire {
    /// `p/q` text or an integer.
    pub bound_exponent: Scalar,
    #[serde(default)]
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetWire {
    #[serde(default = "schema")]
    pub schema: u32,
    pub intervals: Vec<IntervalWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailWire>,
}

fn schema() -> u32 {
    SCHEMA
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SetInput {
    Bare(Vec<IntervalWire>),
    Full(SetWire),
}

pub fn parse_rational(s: &Scalar) -> Result<Rational, AppError> {
    let bad = || AppError::Usage(format!("expected p/q, got {:?}", s));
    match s {
        Scalar::Number(x) if x.fract() == 0.0 && x.abs() < 1e15 => Ok(Rational::from_integer(*x as i64)),
        Scalar::Number(_) => Err(bad()),
        Scalar::Text(t) => {
            let (p, q) = t.split_once('/').unwrap_or((t, "1"));
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

fn check_schema(schema: u32) -> Result<(), AppError> {
    if schema == SCHEMA {
        Ok(())
    } else {
        Err(AppError::Usage(format!("unsupported schema {}", schema)))
    }
}

pub fn set_from_json(text: &str, trunc: Truncation) -> Result<MeasurableSet, AppError> {
    let wire = match serde_json::from_str::<SetInput>(text)? {
        SetInput::Bare(intervals) => SetWire { schema: SCHEMA, intervals, tail: None },
        SetInput::Full(w) => w,
    };
    check_schema(wire.schema)?;
    let intervals = wire.intervals.iter().map(|i| i.to_lc(trunc)).collect::<Result<Vec<_>, _>>()?;
    let tail = match &wire.tail {
        Some(t) => Some(TailCertificate::new(parse_rational(&t.bound_exponent)?, t.description.clone())?),
        None => None,
    };
    Ok(MeasurableSet::new(trunc, intervals, tail)?)
}

pub fn set_to_wire(set: &MeasurableSet) -> SetWire {
    SetWire {
        schema: SCHEMA,
        intervals: set.intervals().iter().map(IntervalWire::from_lc).collect(),
        tail: set.tail().map(|t| TailWire {
            bound_exponent: Scalar::Text(t.bound_exponent().to_string()),
            description: t.description.clone(),
        }),
    }
}

pub fn real_set_from_json(text: &str, trunc: Truncation) -> Result<RealSet, AppError> {
    let wire = match serde_json::from_str::<SetInput>(text)? {
        SetInput::Bare(intervals) => SetWire { schema: SCHEMA, intervals, tail: None },
        SetInput::Full(w) => w,
    };
    check_schema(wire.schema)?;
    if wire.tail.is_some() {
        return Err(AppError::Usage("real sets carry no tail".into()));
    }
    let intervals = wire.intervals.iter().map(|i| i.to_real(trunc)).collect::<Result<Vec<_>, _>>()?;
    Ok(RealSet::union_of(intervals))
}

pub fn real_set_to_wire(set: &RealSet) -> SetWire {
    SetWire { schema: SCHEMA, intervals: set.intervals().iter().map(IntervalWire::from_real).collect(), tail: None }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceWire {
    pub interval: IntervalWire,
    /// Defaults to the interval midpoint.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Scalar>,
    pub coeffs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseWire {
    #[serde(default = "schema")]
    pub schema: u32,
    pub pieces: Vec<PieceWire>,
}

pub fn piecewise_from_json(text: &str, trunc: Truncation) -> Result<PiecewiseFn, AppError> {
    let wire: PiecewiseWire = serde_json::from_str(text)?;
    check_schema(wire.schema)?;
    let mut pieces = Vec::with_capacity(wire.pieces.len());
    for p in &wire.pieces {
        let interval = p.interval.to_lc(trunc)?;
        let center = match &p.center {
            Some(c) => c.lc(trunc)?,
            None => interval.midpoint(),
        };
        let coeffs = p.coeffs.iter().map(|c| c.lc(trunc)).collect::<Result<Vec<_>, _>>()?;
        pieces.push(PowerSeriesFn::new(interval, center, coeffs)?);
    }
    Ok(PiecewiseFn::new(pieces)?)
}

/// Only finite-coefficient pieces have a wire form.
pub fn piecewise_to_wire(f: &PiecewiseFn) -> Result<PiecewiseWire, AppError> {
    let pieces = f
        .pieces()
        .iter()
        .map(|p| {
            let coeffs = p
                .finite_coeffs()
                .ok_or_else(|| AppError::Usage("generated series have no wire form".into()))?;
            Ok(PieceWire {
                interval: IntervalWire::from_lc(p.interval()),
                center: Some(Scalar::Text(p.center().to_string())),
                coeffs: coeffs.iter().map(|c| Scalar::Text(c.to_string())).collect(),
            })
        })
        .collect::<Result<Vec<_>, AppError>>()?;
    Ok(PiecewiseWire { schema: SCHEMA, pieces })
}

/// JSON number for finite values (null for NaN), `"+inf"` or `"-inf"`.
pub fn ext_json(x: &ExtReal) -> Value {
    match x {
        ExtReal::Finite(r) => {
            let v = r.to_f64();
            if v.is_nan() {
                Value::Null
            } else {
                json!(v)
            }
        }
        ExtReal::PosInf => json!("+inf"),
        ExtReal::NegInf => json!("-inf"),
    }
}

/// Reads `@path` from disk, `-` from stdin, anything else verbatim.
pub fn read_arg(arg: &str) -> Result<String, AppError> {
    if let Some(path) = arg.strip_prefix('@') {
        Ok(fs::read_to_string(path)?)
    } else if arg == "-" {
        Ok(std::io::read_to_string(std::io::stdin())?)
    } else {
        Ok(arg.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Truncation {
        Truncation::exact(16)
    }

    #[test]
    fn interval_text() {
        let i = parse_interval("[0, 1 + d)", t()).unwrap();
        assert_eq!(i, IntervalLc::new(t().zero(), t().one() + t().d(), true, false).unwrap());
        let j = parse_interval("(1, d^-1]", t()).unwrap();
        assert!(!j.lo_closed() && !j.hi().is_finite());
        let k = parse_interval("[0, pi]", Truncation::default()).unwrap();
        assert_eq!(k.hi().standard_part().to_f64(), std::f64::consts::PI);
        assert!(parse_interval("0, 1", t()).is_err());
        assert!(parse_interval("[1, 0]", t()).is_err());
    }

    #[test]
    fn set_round_trip() {
        let src = r#"{"schema":1,"intervals":[["0","1/3 + d"],{"lo":2,"hi":"5/2","hi_closed":false}],
                      "tail":{"bound_exponent":"1/2","description":"geometric"}}"#;
        let set = set_from_json(src, t()).unwrap();
        assert_eq!(set.intervals().len(), 2);
        assert_eq!(set.tail().unwrap().bound_exponent(), Rational::new(1, 2));
        let out = serde_json::to_string(&set_to_wire(&set)).unwrap();
        assert_eq!(set_from_json(&out, t()).unwrap(), set);
        let bare = set_from_json(r#"[[0, 1], [2, 3]]"#, t()).unwrap();
        assert_eq!(bare.ml_measure(), ExtReal::Finite(Real::int(2)));
    }

    #[test]
    fn set_errors() {
        assert!(matches!(set_from_json(r#"[[0, 2], [1, 3]]"#, t()), Err(AppError::Core(_))));
        assert!(matches!(set_from_json(r#"{"schema":2,"intervals":[]}"#, t()), Err(AppError::Usage(_))));
        assert!(matches!(set_from_json("[[0,", t()), Err(AppError::Json(_))));
    }

    #[test]
    fn real_set_round_trip() {
        let set = real_set_from_json(r#"[["0","1/3"],["1/4","1"],["2","3"]]"#, t()).unwrap();
        assert_eq!(set.intervals().len(), 2);
        assert_eq!(set.lebesgue(), Real::int(2));
        let out = serde_json::to_string(&real_set_to_wire(&set)).unwrap();
        assert_eq!(real_set_from_json(&out, t()).unwrap(), set);
        assert!(real_set_from_json(r#"[["0","d"]]"#, t()).is_err());
    }

    #[test]
    fn piecewise_round_trip() {
        let src = r#"{"pieces":[{"interval":["0","1"],"coeffs":["1","d"]},
                                 {"interval":{"lo":"1","hi":"2","lo_closed":false},"center":"3/2","coeffs":[2]}]}"#;
        let f = piecewise_from_json(src, t()).unwrap();
        assert_eq!(f.pieces()[0].center(), &t().ratio(1, 2));
        let wire = piecewise_to_wire(&f).unwrap();
        let back = piecewise_from_json(&serde_json::to_string(&wire).unwrap(), t()).unwrap();
        assert_eq!(piecewise_to_wire(&back).unwrap(), wire);
    }

    #[test]
    fn ext_values() {
        assert_eq!(ext_json(&ExtReal::PosInf), json!("+inf"));
        assert_eq!(ext_json(&ExtReal::Finite(Real::ratio(1, 4))), json!(0.25));
    }
}
