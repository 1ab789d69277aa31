//! Numeric literals in job files: integers, fractions `p/q`, decimals with
//! optional exponent (all exact), and `sqrt(a)` or `sqrt(a)/b` (inexact).

use std::fmt;
use std::str::FromStr;

use phspace::{Rational, Scalar};
use serde::{Deserialize, Serialize};

/// A literal as written in a job file: a string or a TOML number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Text(String),
    Int(i64),
    Float(f64),
}

impl From<&str> for Literal {
    fn from(s: &str) -> Self {
        Literal::Text(s.to_string())
    }
}

impl From<String> for Literal {
    fn from(s: String) -> Self {
        Literal::Text(s)
    }
}

impl From<i64> for Literal {
    fn from(n: i64) -> Self {
        Literal::Int(n)
    }
}

impl From<&Rational> for Literal {
    fn from(r: &Rational) -> Self {
        Literal::Text(r.to_string())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Text(s) => f.write_str(s),
            Literal::Int(n) => write!(f, "{n}"),
            Literal::Float(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Rational),
    Real(f64),
}

impl Number {
    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => r.to_f64_lossy(),
            Number::Real(x) => *x,
        }
    }
}

impl Literal {
    pub fn parse(&self) -> Result<Number, String> {
        match self {
            Literal::Text(s) => parse_number(s),
            Literal::Int(n) => Ok(Number::Exact(Rational::from_integer((*n).into()))),
            // The shortest round-trip representation is taken as the intended decimal.
            Literal::Float(x) if x.is_finite() => parse_number(&format!("{x:?}")),
            Literal::Float(x) => Err(format!("non-finite number {x}")),
        }
    }
}

pub fn parse_number(text: &str) -> Result<Number, String> {
    let s = text.trim();
    let err = || format!("invalid number {text:?}");
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let value = if let Some(rest) = body.strip_prefix("sqrt(") {
        let close = rest.find(')').ok_or_else(err)?;
        let radicand = parse_number(&rest[..close])?.to_f64();
        if radicand < 0.0 {
            return Err(err());
        }
        let mut v = radicand.sqrt();
        let tail = rest[close + 1..].trim();
        if let Some(d) = tail.strip_prefix('/') {
            v /= parse_number(d)?.to_f64();
        } else if !tail.is_empty() {
            return Err(err());
        }
        Number::Real(v)
    } else if let Some((n, d)) = body.split_once('/') {
        let n = parse_decimal(n.trim()).ok_or_else(err)?;
        let d = parse_decimal(d.trim()).ok_or_else(err)?;
        if d == Rational::from_integer(0.into()) {
            return Err(format!("zero denominator in {text:?}"));
        }
        Number::Exact(n / d)
    } else {
        Number::Exact(parse_decimal(body).ok_or_else(err)?)
    };
    Ok(match (neg, value) {
        (false, v) => v,
        (true, Number::Exact(r)) => Number::Exact(-r),
        (true, Number::Real(x)) => Number::Real(-x),
    })
}

/// Unsigned or signed decimal `ddd[.ddd][e[+-]dd]` as an exact rational.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let scale = exp - frac.len() as i32;
    let pow = |k: i32| format!("1{}", "0".repeat(k as usize));
    let text = if scale >= 0 { format!("{digits}{}", "0".repeat(scale as usize)) } else { format!("{digits}/{}", pow(-scale)) };
    let r = Rational::from_str(&text).ok()?;
    Some(if neg { -r } else { r })
}

/// Scalars a job can run in.
pub trait Arith: Scalar {
    fn from_number(n: &Number) -> Self;
}

impl Arith for f64 {
    fn from_number(n: &Number) -> Self {
        n.to_f64()
    }
}

impl Arith for Rational {
    fn from_number(n: &Number) -> Self {
        match n {
            Number::Exact(r) => r.clone(),
            Number::Real(x) => Rational::from_f64_lossy(*x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(n: i64, d: i64) -> Number {
        Number::Exact(Rational::new(n.into(), d.into()))
    }

    #[test]
    fn exact_forms() {
        assert_eq!(parse_number("3").unwrap(), exact(3, 1));
        assert_eq!(parse_number("-3/7").unwrap(), exact(-3, 7));
        assert_eq!(parse_number("0.25").unwrap(), exact(1, 4));
        assert_eq!(parse_number("-1.2721").unwrap(), exact(-12721, 10000));
        assert_eq!(parse_number("1.5e-2").unwrap(), exact(3, 200));
        assert_eq!(parse_number("2e3").unwrap(), exact(2000, 1));
        assert_eq!(parse_number("1/0.5").unwrap(), exact(2, 1));
        assert_eq!(Literal::Float(0.1).parse().unwrap(), exact(1, 10));
        assert_eq!(Literal::Int(-4).parse().unwrap(), exact(-4, 1));
    }

    #[test]
    fn inexact_forms() {
        let Number::Real(x) = parse_number("sqrt(6071202867)/124526").unwrap() else { panic!() };
        assert!((x - 6071202867f64.sqrt() / 124526.0).abs() < 1e-15);
        assert_eq!(parse_number("-sqrt(4)").unwrap(), Number::Real(-2.0));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "sqrt(-1)", "1..2", "sqrt(2)x", "."] {
            assert!(parse_number(s).is_err(), "{s}");
        }
    }
}
