//! Scalar abstractions shared by the exact and floating-point halves of the crate.
//!
//! The frame algebra is written once against [`Scalar`] and instantiated with
//! [`BigRational`] for exact checks and with `f64`/`f32` when coefficients
//! are handed to the dynamics engines.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FloatConst, FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field element usable by the exact algebra: rationals or floats.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts to a floating-point type at the dynamics-engine boundary.
    fn to_real<F: Real>(&self) -> F;
}

impl Scalar for BigRational {
    fn to_real<F: Real>(&self) -> F {
        // `to_f64` rounds huge numerators/denominators sensibly.
        F::from_f64(self.to_f64().unwrap_or(f64::NAN)).unwrap()
    }
}

impl Scalar for f64 {
    fn to_real<F: Real>(&self) -> F {
        F::from_f64(*self).unwrap()
    }
}

impl Scalar for f32 {
    fn to_real<F: Real>(&self) -> F {
        F::from_f32(*self).unwrap()
    }
}

/// Floating point types the grid and Gaussian engines run on.
pub trait Real:
    num_traits::Float + FloatConst + Scalar + rustfft::FftNum + Default + std::iter::Sum
{
}

impl Real for f64 {}
impl Real for f32 {}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::InvalidParameter(format!("not a rational: {text:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::InvalidParameter(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigRational::new(BigInt::from_str(frac).map_err(|_| bad())?, scale);
        let whole = BigRational::from_integer(int_part);
        return Ok(if negative { whole - frac_part } else { whole + frac_part });
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

/// Shorthand for `n/d` as an exact rational.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q` (or `p` when integral).
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn from_usize<T: Scalar>(k: usize) -> T {
    T::from_usize(k).expect("small integers are representable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational(" -6/8 ").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for q in [ratio(1, 137), ratio(-5, 1), ratio(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }

    #[test]
    fn converts_to_floats() {
        let x: f64 = ratio(1, 4).to_real();
        assert_eq!(x, 0.25);
        let y: f32 = 0.5f64.to_real();
        assert_eq!(y, 0.5);
    }
}
