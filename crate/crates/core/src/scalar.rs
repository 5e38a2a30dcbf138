//! Scalar types the numeric routines are generic over.
//!
//! Counts are always exact [`BigUint`]s. Anything derived from them
//! (probabilities, harmonic numbers, bound values) can be computed in any
//! [`Scalar`]: `f64`/`f32` for quick summaries, [`BigRational`] when the
//! answer has to be exact.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

/// A field-like number type usable by the generic formulas.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync {
    fn from_u64(v: u64) -> Self;

    fn from_biguint(v: &BigUint) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// `num / den` without going through two (possibly overflowing) casts.
    fn from_ratio(num: &BigUint, den: &BigUint) -> Self {
        Self::from_biguint(num) / Self::from_biguint(den)
    }

    fn from_rational(v: &BigRational) -> Self {
        Self::from_bigint(v.numer()) / Self::from_bigint(v.denom())
    }

    /// Lossy conversion for display.
    fn approx_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_biguint(v: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(v.clone()))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_ratio(num: &BigUint, den: &BigUint) -> Self {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }

    fn from_rational(v: &BigRational) -> Self {
        v.clone()
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! float_scalar {
    ($t:ty, $to:ident) => {
        impl Scalar for $t {
            fn from_u64(v: u64) -> Self {
                v as $t
            }

            fn from_biguint(v: &BigUint) -> Self {
                v.$to().unwrap_or(<$t>::INFINITY)
            }

            fn from_bigint(v: &BigInt) -> Self {
                v.$to().unwrap_or(<$t>::NAN)
            }

            fn from_ratio(num: &BigUint, den: &BigUint) -> Self {
                BigRational::from_ratio(num, den).$to().unwrap_or(<$t>::NAN)
            }

            fn from_rational(v: &BigRational) -> Self {
                v.$to().unwrap_or(<$t>::NAN)
            }

            fn approx_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f64, to_f64);
float_scalar!(f32, to_f32);

/// Renders an exact rational as `p/q` (or `p` when integral).
pub fn format_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `1.5` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let mut numer: BigInt = digits.parse().ok()?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(numer, denom));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}
