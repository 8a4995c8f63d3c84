//! Number types shared by the exact and floating-point engines.
//!
//! Every recurrence in the crate is written once against [`Scalar`] and
//! instantiated for `f64` (fast, approximate) and [`Rational`] (exact
//! arbitrary-precision fractions).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction over arbitrary-precision integers, always reduced with a
/// positive denominator.
pub type Rational = BigRational;

pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// `true` for exact arithmetic.
    const EXACT: bool;

    fn from_usize(k: usize) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    /// Default tolerance for equalities (`0` when exact).
    fn default_tol() -> Self;
    /// Margin a difference must exceed to count as strict (`0` when exact).
    fn strict_margin() -> Self;

    /// Entry as it appears in JSON output: `"p/q"` for exact values, a
    /// 17-significant-digit number otherwise.
    fn json_token(&self) -> String;

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn half() -> Self {
        Self::one() / Self::from_usize(2)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_usize(k: usize) -> Self {
        k as f64
    }

    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn default_tol() -> Self {
        1e-10
    }

    fn strict_margin() -> Self {
        1e-12
    }

    fn json_token(&self) -> String {
        fmt_float(*self)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_usize(k: usize) -> Self {
        Rational::from_integer(BigInt::from(k))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn default_tol() -> Self {
        Rational::zero()
    }

    fn strict_margin() -> Self {
        Rational::zero()
    }

    fn json_token(&self) -> String {
        format!("\"{}\"", fmt_rational(self))
    }
}

/// Formats with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // Not representable as a JSON number; callers keep values finite.
        format!("\"{x}\"")
    }
}

/// Always `p/q`, including integers (`1/1`).
pub fn fmt_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Conversion that survives numerators and denominators beyond `f64` range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nbits = q.numer().bits() as i64;
    let dbits = q.denom().bits() as i64;
    let shift_n = (nbits - 60).max(0) as usize;
    let shift_d = (dbits - 60).max(0) as usize;
    let n = (q.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

/// Parses `"p/q"`, an integer, or a decimal with optional exponent
/// (`"0.25"`, `"1e-3"`) into an exact fraction.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidParameter(format!("not a number: {text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i64;
    if exponent.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let ten = Rational::from_integer(BigInt::from(10));
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= pow;
    } else {
        value /= pow;
    }
    Ok(if negative { -value } else { value })
}

/// `(1 + h) / h`: the decay factor between a vertex and its pendant neighbor.
pub fn decay_factor<T: Scalar>(h: &T) -> T {
    (T::one() + h.clone()) / h.clone()
}

pub(crate) fn ensure_positive<T: Scalar>(h: &T) -> Result<()> {
    if *h > T::zero() {
        Ok(())
    } else {
        Err(Error::NonPositiveStep(format!("{h:?}")))
    }
}

pub(crate) fn is_one<T: Scalar>(h: &T) -> bool {
    *h == T::one()
}
