//! Scalar backends.
//!
//! Two backends share one contract: [`Rational`] (exact, arbitrary precision)
//! and [`Complex`] (double precision, compared within an absolute tolerance).
//! Generic code is written against [`Scalar`]; a single tensor or network can
//! never mix the two because the backend is a type parameter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rational = num::BigRational;

/// Double precision complex scalar.
pub type Complex = num::complex::Complex64;

/// Default absolute tolerance for [`Complex`] comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Runtime tag for a scalar backend, as written in data files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Complex,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Complex => "complex",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(Backend::Rational),
            "complex" => Ok(Backend::Complex),
            other => Err(format!("unknown backend `{other}`")),
        }
    }
}

/// Arithmetic required of a tensor entry.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Magnitude type used to report violations.
    type Norm: Clone + fmt::Debug + fmt::Display + PartialOrd + Send + Sync;

    const BACKEND: Backend;

    /// Absolute value, in the backend's natural magnitude type.
    fn norm(&self) -> Self::Norm;

    /// The zero magnitude.
    fn norm_zero() -> Self::Norm;

    /// Whether a magnitude counts as zero under `tol`. Exact backends ignore `tol`.
    fn negligible(norm: &Self::Norm, tol: f64) -> bool;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        Self::negligible(&(self.clone() - other.clone()).norm(), tol)
    }

    /// Multiplicative inverse, `None` for zero.
    fn recip(&self) -> Option<Self>;

    /// Complex conjugate; the identity on real backends.
    fn conj(&self) -> Self;

    /// Whether the imaginary part vanishes (within `tol`).
    fn is_real(&self, tol: f64) -> bool;

    fn from_i64(v: i64) -> Self;

    /// Parses the textual form used by the data files.
    fn parse(text: &str) -> Result<Self, String>;

    /// Renders the textual form used by the data files.
    fn render(&self) -> String;
}

impl Scalar for Rational {
    type Norm = Rational;

    const BACKEND: Backend = Backend::Rational;

    fn norm(&self) -> Rational {
        self.abs()
    }

    fn norm_zero() -> Rational {
        Rational::zero()
    }

    fn negligible(norm: &Rational, _tol: f64) -> bool {
        norm.is_zero()
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(num::rational::Ratio::recip(self))
        }
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_real(&self, _tol: f64) -> bool {
        true
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn parse(text: &str) -> Result<Self, String> {
        parse_rational(text)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Complex {
    type Norm = f64;

    const BACKEND: Backend = Backend::Complex;

    fn norm(&self) -> f64 {
        Complex::norm(*self)
    }

    fn norm_zero() -> f64 {
        0.0
    }

    fn negligible(norm: &f64, tol: f64) -> bool {
        *norm <= tol
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Complex::new(1.0, 0.0) / self)
        }
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn is_real(&self, tol: f64) -> bool {
        self.im.abs() <= tol
    }

    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }

    fn parse(text: &str) -> Result<Self, String> {
        parse_complex(text)
    }

    fn render(&self) -> String {
        let im = significant(self.im);
        if im.starts_with('-') {
            format!("{}{}i", significant(self.re), im)
        } else {
            format!("{}+{}i", significant(self.re), im)
        }
    }
}

/// Rounds to 12 significant digits and prints the shortest form.
fn significant(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

fn parse_integer(text: &str) -> Result<BigInt, String> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid integer `{text}`"));
    }
    text.parse::<BigInt>()
        .map_err(|e| format!("invalid integer `{text}`: {e}"))
}

/// Parses `p`, `p/q` with an optional sign on `p`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_integer(text)?)),
        Some((num, den)) => {
            let num = parse_integer(num.trim())?;
            let den = parse_integer(den.trim())?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{text}`"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

fn parse_real(text: &str) -> Result<f64, String> {
    if text.contains('/') {
        let r = parse_rational(text)?;
        let (n, d) = (r.numer().to_string(), r.denom().to_string());
        let n: f64 = n.parse().map_err(|_| format!("invalid number `{text}`"))?;
        let d: f64 = d.parse().map_err(|_| format!("invalid number `{text}`"))?;
        return Ok(n / d);
    }
    let ok = !text.is_empty()
        && text
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'));
    if !ok {
        return Err(format!("invalid number `{text}`"));
    }
    text.parse::<f64>()
        .map_err(|_| format!("invalid number `{text}`"))
}

/// Parses `a`, `bi`, `i`, `-i`, `a+bi`, `a-bi`. Parts may be decimals or `p/q`.
pub fn parse_complex(text: &str) -> Result<Complex, String> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err("empty scalar".to_owned());
    }
    let Some(body) = text.strip_suffix('i') else {
        return Ok(Complex::new(parse_real(&text)?, 0.0));
    };
    // Split at the last sign that is not part of an exponent and not leading.
    let bytes = body.as_bytes();
    let mut split = None;
    for pos in (1..bytes.len()).rev() {
        if matches!(bytes[pos], b'+' | b'-') && !matches!(bytes[pos - 1], b'e' | b'E') {
            split = Some(pos);
            break;
        }
    }
    let imag = |s: &str| -> Result<f64, String> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            other => parse_real(other),
        }
    };
    match split {
        Some(pos) => {
            let re = parse_real(&body[..pos])?;
            let im = imag(&body[pos..])?;
            Ok(Complex::new(re, im))
        }
        None => Ok(Complex::new(0.0, imag(body)?)),
    }
}
