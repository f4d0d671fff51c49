//! The tagged numeric tower shared by every module.
//!
//! Exact kinds (`rational`, `gauss`) use unbounded integers and never round.
//! Binary kinds (`float`, `cfloat`) are plain `f64` / `Complex<f64>`.
//! Operations that mix kinds fail with [`Error::KindMismatch`]; nothing is
//! coerced implicitly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Gaussian rational `a + b i` with `a, b` exact rationals.
pub type Gauss = Complex<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarKind {
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "gauss")]
    Gauss,
    #[serde(rename = "float")]
    Float,
    #[serde(rename = "cfloat")]
    CFloat,
}

impl ScalarKind {
    pub fn is_exact(self) -> bool {
        matches!(self, ScalarKind::Rational | ScalarKind::Gauss)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Gauss => "gauss",
            ScalarKind::Float => "float",
            ScalarKind::CFloat => "cfloat",
        }
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScalarKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(ScalarKind::Rational),
            "gauss" => Ok(ScalarKind::Gauss),
            "float" => Ok(ScalarKind::Float),
            "cfloat" => Ok(ScalarKind::CFloat),
            other => Err(Error::parse(
                "scalar",
                format!("unknown scalar kind '{other}' (expected rational|gauss|float|cfloat)"),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Gauss(Gauss),
    Float(f64),
    CFloat(Complex64),
}

/// Shorthand for the exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn gauss(re: BigRational, im: BigRational) -> Gauss {
    Complex::new(re, im)
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Gauss(_) => ScalarKind::Gauss,
            Scalar::Float(_) => ScalarKind::Float,
            Scalar::CFloat(_) => ScalarKind::CFloat,
        }
    }

    pub fn zero(kind: ScalarKind) -> Self {
        Self::from_i64(kind, 0)
    }

    pub fn one(kind: ScalarKind) -> Self {
        Self::from_i64(kind, 1)
    }

    pub fn from_i64(kind: ScalarKind, n: i64) -> Self {
        match kind {
            ScalarKind::Rational => Scalar::Rational(int(n)),
            ScalarKind::Gauss => Scalar::Gauss(Complex::new(int(n), BigRational::zero())),
            ScalarKind::Float => Scalar::Float(n as f64),
            ScalarKind::CFloat => Scalar::CFloat(Complex64::new(n as f64, 0.0)),
        }
    }

    /// Embeds an exact rational into `kind`. Binary kinds round to nearest.
    pub fn from_rational(kind: ScalarKind, q: &BigRational) -> Self {
        match kind {
            ScalarKind::Rational => Scalar::Rational(q.clone()),
            ScalarKind::Gauss => Scalar::Gauss(Complex::new(q.clone(), BigRational::zero())),
            ScalarKind::Float => Scalar::Float(rational_to_f64(q)),
            ScalarKind::CFloat => Scalar::CFloat(Complex64::new(rational_to_f64(q), 0.0)),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind().is_exact()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gauss(z) => z.re.is_zero() && z.im.is_zero(),
            Scalar::Float(x) => *x == 0.0,
            Scalar::CFloat(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Float(x) => x.is_finite(),
            Scalar::CFloat(z) => z.re.is_finite() && z.im.is_finite(),
            _ => true,
        }
    }

    fn check_kind(&self, other: &Scalar) -> Result<()> {
        if self.kind() == other.kind() {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                left: self.kind(),
                right: other.kind(),
            })
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_kind(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gauss(a), Scalar::Gauss(b)) => Scalar::Gauss(a + b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            (Scalar::CFloat(a), Scalar::CFloat(b)) => Scalar::CFloat(a + b),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_kind(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Gauss(a), Scalar::Gauss(b)) => Scalar::Gauss(a - b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            (Scalar::CFloat(a), Scalar::CFloat(b)) => Scalar::CFloat(a - b),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_kind(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gauss(a), Scalar::Gauss(b)) => Scalar::Gauss(a * b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            (Scalar::CFloat(a), Scalar::CFloat(b)) => Scalar::CFloat(a * b),
            _ => unreachable!(),
        })
    }

    /// Exact kinds reject a zero divisor; float kinds follow IEEE semantics.
    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_kind(other)?;
        if other.is_exact() && other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a / b),
            (Scalar::Gauss(a), Scalar::Gauss(b)) => Scalar::Gauss(a / b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            (Scalar::CFloat(a), Scalar::CFloat(b)) => Scalar::CFloat(a / b),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gauss(a) => Scalar::Gauss(-a),
            Scalar::Float(a) => Scalar::Float(-a),
            Scalar::CFloat(a) => Scalar::CFloat(-a),
        }
    }

    /// Modulus as `f64` (approximate for exact kinds).
    pub fn abs_f64(&self) -> f64 {
        self.to_complex64().norm()
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            Scalar::Rational(q) => Complex64::new(rational_to_f64(q), 0.0),
            Scalar::Gauss(z) => Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im)),
            Scalar::Float(x) => Complex64::new(*x, 0.0),
            Scalar::CFloat(z) => *z,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_gauss(&self) -> Option<&Gauss> {
        match self {
            Scalar::Gauss(z) => Some(z),
            _ => None,
        }
    }

    /// Parses the textual form used in JSON documents for the given kind.
    pub fn parse(kind: ScalarKind, text: &str) -> Result<Scalar> {
        match kind {
            ScalarKind::Rational => parse_rational(text).map(Scalar::Rational),
            ScalarKind::Gauss => parse_gauss(text).map(Scalar::Gauss),
            ScalarKind::Float => text
                .trim()
                .parse::<f64>()
                .map(Scalar::Float)
                .map_err(|e| Error::parse("", format!("invalid float '{text}': {e}"))),
            ScalarKind::CFloat => Err(Error::parse(
                "",
                "complex floats are written as a [re, im] array",
            )),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Rational(q) => Value::String(format_rational(q)),
            Scalar::Gauss(z) => Value::String(format_gauss(z)),
            Scalar::Float(x) => float_json(*x),
            Scalar::CFloat(z) => Value::Array(vec![float_json(z.re), float_json(z.im)]),
        }
    }

    pub fn from_json(kind: ScalarKind, value: &Value) -> Result<Scalar> {
        match (kind, value) {
            (ScalarKind::Rational | ScalarKind::Gauss, Value::String(s)) => Scalar::parse(kind, s),
            (ScalarKind::Rational | ScalarKind::Gauss, Value::Number(n)) if n.is_i64() => {
                Ok(Scalar::from_i64(kind, n.as_i64().unwrap()))
            }
            (ScalarKind::Float, Value::Number(n)) => Ok(Scalar::Float(n.as_f64().unwrap())),
            (ScalarKind::CFloat, Value::Array(parts)) if parts.len() == 2 => {
                let re = parts[0]
                    .as_f64()
                    .ok_or_else(|| Error::parse("[0]", "expected a number"))?;
                let im = parts[1]
                    .as_f64()
                    .ok_or_else(|| Error::parse("[1]", "expected a number"))?;
                Ok(Scalar::CFloat(Complex64::new(re, im)))
            }
            (kind, other) => Err(Error::parse(
                "",
                format!("value {other} is not a valid {kind} scalar"),
            )),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&format_rational(q)),
            Scalar::Gauss(z) => f.write_str(&format_gauss(z)),
            Scalar::Float(x) => write!(f, "{x:e}"),
            Scalar::CFloat(z) => write!(f, "{:e}{:+e}i", z.re, z.im),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<Gauss> for Scalar {
    fn from(z: Gauss) -> Self {
        Scalar::Gauss(z)
    }
}

fn float_json(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Canonical `p/q` text; the denominator is always written.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn format_gauss(z: &Gauss) -> String {
    let im = format_rational(&z.im);
    if z.im.is_negative() {
        format!("{}{}*i", format_rational(&z.re), im)
    } else {
        format!("{}+{}*i", format_rational(&z.re), im)
    }
}

/// Accepts `p`, `p/q`, and finite decimals such as `-1.25`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = |why: &str| Error::parse("", format!("invalid rational '{text}': {why}"));
    if t.is_empty() {
        return Err(bad("empty"));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad("numerator"))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad("denominator"))?;
        if q.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("fraction digits"));
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mut n = BigInt::from_str(&digits).map_err(|_| bad("digits"))?;
        if negative {
            n = -n;
        }
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(n, scale));
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| bad("not an integer"))
}

/// Accepts `a+b*i`, `a-b*i`, `b*i`, and plain `a`, each part as in [`parse_rational`].
pub fn parse_gauss(text: &str) -> Result<Gauss> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix("*i").or_else(|| t.strip_suffix('i')) else {
        return Ok(Complex::new(parse_rational(&t)?, BigRational::zero()));
    };
    let split = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .next_back();
    let imag = |s: &str| -> Result<BigRational> {
        match s {
            "" | "+" => Ok(BigRational::one()),
            "-" => Ok(-BigRational::one()),
            s => parse_rational(s.trim_start_matches('+')),
        }
    };
    match split {
        Some(i) => Ok(Complex::new(parse_rational(&body[..i])?, imag(&body[i..])?)),
        None => Ok(Complex::new(BigRational::zero(), imag(body)?)),
    }
}

/// Nearest `f64` to an exact rational, robust to huge numerators/denominators.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = q.numer().bits() as i64 - q.denom().bits() as i64;
    // scale to ~64 significant bits before converting
    let (n, d) = if shift > 0 {
        (q.numer().clone(), q.denom() << (shift as u64))
    } else {
        (q.numer() << ((-shift) as u64), q.denom().clone())
    };
    let scaled = (n << 64u32) / d;
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi((shift - 64) as i32)
}
