//! Rational enclosures of transcendental constants.
//!
//! Every inequality check in this crate compares an exact rational against a
//! quantity like `e^{-M}` or `ln(n)`. Those are represented by a [`Bracket`]:
//! a pair of rationals `lo <= x <= hi` obtained with outward rounding, so a
//! check that holds against the adverse endpoint holds for the true value.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Decimal digits kept after every rounding step.
pub const WORKING_DIGITS: usize = 60;

/// Width every published bracket must stay below.
pub fn required_margin() -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 30))
}

fn scale() -> BigInt {
    num_traits::pow(BigInt::from(10), WORKING_DIGITS)
}

fn round_down(x: &BigRational) -> BigRational {
    let s = scale();
    BigRational::new((x * BigRational::from_integer(s.clone())).floor().to_integer(), s)
}

fn round_up(x: &BigRational) -> BigRational {
    let s = scale();
    BigRational::new((x * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Closed rational interval `[lo, hi]` known to contain some real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    lo: BigRational,
    hi: BigRational,
}

impl Bracket {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted bracket");
        Bracket { lo: round_down(&lo), hi: round_up(&hi) }
    }

    pub fn exact(v: BigRational) -> Self {
        Bracket { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: i64) -> Self {
        Self::exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn add(&self, other: &Bracket) -> Bracket {
        Bracket::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Bracket) -> Bracket {
        Bracket::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Bracket {
        Bracket { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, other: &Bracket) -> Bracket {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Bracket::new(lo, hi)
    }

    pub fn scale(&self, factor: &BigRational) -> Bracket {
        self.mul(&Bracket::exact(factor.clone()))
    }

    /// `1/x` for a strictly positive bracket.
    pub fn recip(&self) -> Bracket {
        assert!(self.lo.is_positive(), "recip of a bracket touching zero");
        Bracket::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, other: &Bracket) -> Bracket {
        self.mul(&other.recip())
    }

    pub fn powi(&self, exp: u32) -> Bracket {
        let mut acc = Bracket::from_int(1);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Square root of a nonnegative bracket.
    pub fn sqrt(&self) -> Bracket {
        assert!(!self.lo.is_negative(), "sqrt of a negative bracket");
        let s = scale();
        let s2 = BigRational::from_integer(&s * &s);
        let lo_scaled = (&self.lo * &s2).floor().to_integer();
        let hi_scaled = (&self.hi * &s2).ceil().to_integer();
        let lo_root = lo_scaled.to_biguint().unwrap().sqrt();
        let hi_u = hi_scaled.to_biguint().unwrap();
        let mut hi_root = hi_u.sqrt();
        if &hi_root * &hi_root < hi_u {
            hi_root += 1u32;
        }
        Bracket {
            lo: BigRational::new(BigInt::from(lo_root), s.clone()),
            hi: BigRational::new(BigInt::from(hi_root), s),
        }
    }

    /// `exp` is monotone, so the image of `[lo, hi]` is `[exp(lo), exp(hi)]`.
    pub fn exp(&self) -> Bracket {
        let lo = exp_rational(&self.lo);
        let hi = exp_rational(&self.hi);
        Bracket { lo: lo.lo, hi: hi.hi }
    }

    /// `ln` of a strictly positive bracket.
    pub fn ln(&self) -> Bracket {
        let lo = ln_rational(&self.lo);
        let hi = ln_rational(&self.hi);
        Bracket { lo: lo.lo, hi: hi.hi }
    }

    /// The ceiling, when it is the same integer for every point of the bracket.
    pub fn certain_ceil(&self) -> Option<BigInt> {
        let a = self.lo.ceil().to_integer();
        let b = self.hi.ceil().to_integer();
        (a == b).then_some(a)
    }

    /// Ceiling of the upper endpoint; never below the true ceiling.
    pub fn upper_ceil(&self) -> BigInt {
        self.hi.ceil().to_integer()
    }

    /// True only if `v <= x` for every `x` in the bracket.
    pub fn certainly_above(&self, v: &BigRational) -> bool {
        v <= &self.lo
    }

    /// True only if `x <= v` for every `x` in the bracket.
    pub fn certainly_below(&self, v: &BigRational) -> bool {
        &self.hi <= v
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", decimal(&self.lo, 35, false), decimal(&self.hi, 35, true))
    }
}

/// Decimal rendering with `digits` fractional digits, rounded down or up.
pub fn decimal(v: &BigRational, digits: usize, up: bool) -> String {
    let s = num_traits::pow(BigInt::from(10), digits);
    let scaled = v * BigRational::from_integer(s.clone());
    let q = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let negative = q.sign() == Sign::Minus;
    let (int, frac) = q.abs().div_rem(&s);
    let frac = format!("{:0>width$}", frac.to_string(), width = digits);
    format!("{}{}.{}", if negative { "-" } else { "" }, int, frac)
}

fn terms_needed() -> usize {
    // (N+1)! comfortably exceeds 10^(WORKING_DIGITS + 5)
    let mut n = 1usize;
    let mut fact = BigUint::one();
    let target = num_traits::pow(BigUint::from(10u32), WORKING_DIGITS + 5);
    while fact < target {
        n += 1;
        fact *= n;
    }
    n
}

/// Euler's number.
pub fn e() -> Bracket {
    exp_rational(&BigRational::one())
}

/// `exp(x)` for rational `x`, via halving, a Taylor sum with a remainder
/// bound, and repeated squaring.
pub fn exp_rational(x: &BigRational) -> Bracket {
    if x.is_negative() {
        return exp_rational(&-x).recip();
    }
    if x.is_zero() {
        return Bracket::from_int(1);
    }
    let half = rat(1, 2);
    let mut y = x.clone();
    let mut halvings = 0u32;
    while y > half {
        y /= BigRational::from_integer(2.into());
        halvings += 1;
    }
    let n = terms_needed();
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for j in 0..=n {
        sum += &term;
        term = term * &y / BigRational::from_integer(BigInt::from(j + 1));
    }
    // remainder for 0 <= y <= 1/2 is at most twice the first omitted term
    let remainder = term * BigRational::from_integer(2.into());
    let mut b = Bracket::new(sum.clone(), sum + remainder);
    for _ in 0..halvings {
        b = b.mul(&b);
    }
    b
}

/// Whether some partial sum of the Taylor series of `exp(x)`, `x >= 0`, with
/// at most `max_terms` terms reaches `target`. Each partial sum is a lower
/// bound, so `true` proves `exp(x) >= target` in exact arithmetic.
pub fn exp_series_reaches(x: &BigRational, target: &BigRational, max_terms: usize) -> bool {
    assert!(!x.is_negative(), "series lower bound needs x >= 0");
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for j in 0..max_terms {
        sum += &term;
        if &sum >= target {
            return true;
        }
        term = term * x / BigRational::from_integer(BigInt::from(j + 1));
    }
    false
}

fn atan_inv(q: i64) -> Bracket {
    // atan(1/q) = sum (-1)^j / ((2j+1) q^(2j+1)); alternating, decreasing terms
    let eps = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), WORKING_DIGITS + 5));
    let q2 = BigRational::from_integer(BigInt::from(q * q));
    let mut power = rat(1, q);
    let mut sum = BigRational::zero();
    let mut j = 0i64;
    loop {
        let term = &power / BigRational::from_integer(BigInt::from(2 * j + 1));
        if term < eps {
            return Bracket::new(&sum - &term, &sum + &term);
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &q2;
        j += 1;
    }
}

/// Pi via Machin's formula.
pub fn pi() -> Bracket {
    atan_inv(5).scale(&rat(16, 1)).sub(&atan_inv(239).scale(&rat(4, 1)))
}

/// `2 atanh(y)` for `0 <= y <= 1/3`.
fn two_atanh(y: &BigRational) -> Bracket {
    if y.is_zero() {
        return Bracket::from_int(0);
    }
    let eps = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), WORKING_DIGITS + 5));
    let y2 = y * y;
    let mut power = y.clone();
    let mut sum = BigRational::zero();
    let mut j = 0i64;
    loop {
        let term = &power / BigRational::from_integer(BigInt::from(2 * j + 1));
        sum += &term;
        power *= &y2;
        j += 1;
        // tail <= y^(2j+1) / ((2j+1)(1 - y^2))
        let tail = &power
            / BigRational::from_integer(BigInt::from(2 * j + 1))
            / (BigRational::one() - &y2);
        if tail < eps {
            let two = BigRational::from_integer(2.into());
            return Bracket::new(&sum * &two, (&sum + tail) * two);
        }
    }
}

fn ln2() -> Bracket {
    two_atanh(&rat(1, 3))
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(x: &BigRational) -> Bracket {
    assert!(x.is_positive(), "ln of a nonpositive value");
    if x < &BigRational::one() {
        return ln_rational(&x.recip()).neg();
    }
    let two = BigRational::from_integer(2.into());
    let mut m = 0i64;
    let mut r = x.clone();
    while r >= two {
        r /= &two;
        m += 1;
    }
    // r in [1, 2): y = (r-1)/(r+1) in [0, 1/3)
    let y = (&r - BigRational::one()) / (&r + BigRational::one());
    let mantissa = two_atanh(&y);
    ln2().scale(&rat(m, 1)).add(&mantissa)
}

/// Natural logarithm of a positive integer.
pub fn ln_int(n: u64) -> Bracket {
    ln_rational(&BigRational::from_integer(BigInt::from(n)))
}
