//! Coefficient fields.
//!
//! Two interchangeable backends: [`GaussRational`] (exact, used for every
//! algebraic identity) and [`Complex64`] (used wherever pairings come from
//! mode integrals with irrational values).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field operations shared by the coefficient backends.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &BigRational) -> Self;
    fn to_c64(&self) -> Complex64;
    /// The imaginary unit.
    fn i() -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Textual coefficient form used by the element serializer.
    fn write_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    fn parse_coeff(src: &str) -> Option<Self>;
}

/// Exact complex rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRational { re, im: BigRational::zero() }
    }

    /// `num/den` as a real value. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }
}

impl Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_coeff(f)
    }
}

impl Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_coeff(f)
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRational::real(self.re * o.re);
        }
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        GaussRational { re, im }
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational { re: -self.re, im: -self.im }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(src: &str) -> Option<BigRational> {
    let src = src.trim();
    match src.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => BigInt::from_str(src).ok().map(BigRational::from_integer),
    }
}

/// Numeric literals only: `inf`/`nan` spellings are left to labels.
fn parse_f64(src: &str) -> Option<f64> {
    let src = src.trim();
    let lead = src.trim_start_matches(['+', '-']);
    if !lead.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        return None;
    }
    src.parse().ok()
}

/// Splits `a+bi` / `a-bi` at the sign that separates the two parts.
fn split_complex(body: &str) -> Option<(&str, &str)> {
    let bytes = body.as_bytes();
    let mut cut = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx];
        if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            cut = Some(idx);
            break;
        }
    }
    cut.map(|idx| (&body[..idx], &body[idx..]))
}

impl Scalar for GaussRational {
    fn zero() -> Self {
        GaussRational::real(BigRational::zero())
    }
    fn one() -> Self {
        GaussRational::real(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRational { re: &self.re / &norm, im: -(&self.im / &norm) })
    }
    fn from_rational(r: &BigRational) -> Self {
        GaussRational::real(r.clone())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn i() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::one() }
    }

    fn write_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write_rational(f, &self.re),
            (true, false) => {
                write_rational(f, &self.im)?;
                write!(f, "i")
            }
            (false, false) => {
                write!(f, "(")?;
                write_rational(f, &self.re)?;
                if !self.im.is_negative() {
                    write!(f, "+")?;
                }
                write_rational(f, &self.im)?;
                write!(f, "i)")
            }
        }
    }

    fn parse_coeff(src: &str) -> Option<Self> {
        let src = src.trim();
        if let Some(body) = src.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            let (re, im) = split_complex(body)?;
            let im = im.strip_suffix('i')?;
            let im = im.strip_prefix('+').unwrap_or(im);
            return Some(GaussRational::new(parse_rational(re)?, parse_rational(im)?));
        }
        if let Some(im) = src.strip_suffix('i') {
            return Some(GaussRational::new(BigRational::zero(), parse_rational(im)?));
        }
        parse_rational(src).map(GaussRational::real)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Complex64::inv(self))
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn write_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{:?}", self.re)
        } else if self.re == 0.0 {
            write!(f, "{:?}i", self.im)
        } else {
            let sign = if self.im.is_sign_negative() { "" } else { "+" };
            write!(f, "({:?}{}{:?}i)", self.re, sign, self.im)
        }
    }

    fn parse_coeff(src: &str) -> Option<Self> {
        let src = src.trim();
        if let Some(body) = src.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            let (re, im) = split_complex(body)?;
            let im = im.strip_suffix('i')?;
            let im = im.strip_prefix('+').unwrap_or(im);
            return Some(Complex64::new(parse_f64(re)?, parse_f64(im)?));
        }
        if let Some(im) = src.strip_suffix('i') {
            return Some(Complex64::new(0.0, parse_f64(im)?));
        }
        if let Some(r) = parse_rational(src) {
            return Some(Scalar::from_rational(&r));
        }
        parse_f64(src).map(|re| Complex64::new(re, 0.0))
    }
}

/// Largest absolute difference between two scalars, as a complex modulus.
pub fn abs_diff<S: Scalar>(a: &S, b: &S) -> f64 {
    (a.to_c64() - b.to_c64()).norm()
}
