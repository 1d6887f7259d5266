//! Scalar rings used throughout the crate.
//!
//! Two coefficient fields are supported: exact arbitrary-precision rationals
//! and double-precision complex numbers. Symbolic checks additionally use the
//! sparse multivariate ring in [`super::mpoly`], which is a [`Ring`] but not a
//! [`Field`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;
pub type Complex = num_complex::Complex64;

/// Commutative ring with unit. Operations are by value; callers clone.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Exact zero test. For floating values this is `== 0.0`; tolerance-aware
    /// comparisons go through [`Field::is_negligible`].
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
}

pub trait Field: Ring + Div<Output = Self> {
    /// `true` for exact arithmetic (rationals), `false` for floating point.
    const EXACT: bool;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
    /// Absolute value as a double, used for pivoting and tolerance tests.
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex;
    fn from_rational(r: &Rational) -> Self;
    /// Exact value, available only for exact fields.
    fn to_rational(&self) -> Option<Rational>;
    /// Inverse of [`Field::to_complex`]; exact fields round the real part.
    fn from_complex(z: Complex) -> Self;
    /// Zero test against `tol` relative to `max(scale, 1)`. Exact fields ignore
    /// the tolerance.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol * scale.max(1.0)
        }
    }
}

/// Relative tolerance for floating comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
}

/// Environment variable that overrides the default tolerance.
pub const TOLERANCE_ENV: &str = "BETHE_SCHUBERT_TOL";

impl Tolerance {
    pub const DEFAULT_REL: f64 = 1e-8;

    pub fn new(rel: f64) -> Self {
        Tolerance { rel }
    }

    /// Default tolerance, honouring [`TOLERANCE_ENV`] when it parses as a
    /// positive float.
    pub fn from_env() -> Self {
        std::env::var(TOLERANCE_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|v| *v > 0.0 && v.is_finite())
            .map(Tolerance::new)
            .unwrap_or_default()
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.rel * a.abs().max(b.abs()).max(1.0)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: Self::DEFAULT_REL,
        }
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_complex(&self) -> Complex {
        Complex::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn from_complex(z: Complex) -> Self {
        Rational::from_float(z.re).unwrap_or_else(|| Rational::from_i64(0))
    }
}

impl Ring for Complex {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }
}

impl Field for Complex {
    const EXACT: bool = false;

    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex {
        *self
    }
    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn to_rational(&self) -> Option<Rational> {
        None
    }
    fn from_complex(z: Complex) -> Self {
        z
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Shorthand for `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, integers, and finite decimals (`"-0.125"`, `"1e-3"`)
/// exactly into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

/// Formats a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Binomial coefficient as a field element.
pub fn binomial<R: Ring>(n: usize, k: usize) -> R {
    if k > n {
        return R::zero();
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    R::from_i64(acc as i64)
}

/// Falling factorial `m (m-1) ... (m-k+1)`.
pub fn falling_factorial<R: Ring>(m: usize, k: usize) -> R {
    if k > m {
        return R::zero();
    }
    let mut acc = R::one();
    for i in 0..k {
        acc = acc * R::from_i64((m - i) as i64);
    }
    acc
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
