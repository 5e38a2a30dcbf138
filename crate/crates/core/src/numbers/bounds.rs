use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::table::{factorial_pow, SeqOptTable};
use crate::certified::{self, Bracket};
use crate::scalar::Scalar;

/// Generalized harmonic number `H_i(n) = sum_{j=1..n} 1/j^i`.
pub fn harmonic<T: Scalar>(i: u32, n: u64) -> T {
    (1..=n).fold(T::zero(), |acc, j| {
        let denom = num_traits::pow(BigUint::from(j), i as usize);
        acc + T::one() / T::from_biguint(&denom)
    })
}

/// `sum_{i=1..k} C(k, i) H_i(n - 1)`, the growth rate of the upper bound.
pub fn bound_rate<T: Scalar>(k: u32, n: u64) -> T {
    let mut binom = BigUint::one();
    let mut acc = T::zero();
    for i in 1..=k {
        binom = binom * (k - i + 1) / i;
        acc = acc + T::from_biguint(&binom) * harmonic::<T>(i, n - 1);
    }
    acc
}

/// Upper bound `(n-1)!^k / (m-1)! * rate^(m-1)` on `O_k(n, m)`.
pub fn upper_bound<T: Scalar>(k: u32, n: u64, m: u64) -> T {
    assert!(k >= 1 && n >= 2 && m >= 1, "upper_bound needs k>=1, n>=2, m>=1");
    let rate = bound_rate::<T>(k, n);
    let mut v = T::from_biguint(&factorial_pow(n - 1, k));
    for j in 1..m {
        v = v * rate.clone() / T::from_u64(j);
    }
    v
}

/// Upper bounds for `m = 0..=n` in one pass (entry 0 is zero).
pub fn upper_bound_row<T: Scalar>(k: u32, n: u64) -> Vec<T> {
    assert!(k >= 1 && n >= 2, "upper_bound_row needs k>=1, n>=2");
    let rate = bound_rate::<T>(k, n);
    let mut row = Vec::with_capacity(n as usize + 1);
    row.push(T::zero());
    let mut v = T::from_biguint(&factorial_pow(n - 1, k));
    for m in 1..=n {
        if m > 1 {
            v = v * rate.clone() / T::from_u64(m - 1);
        }
        row.push(v.clone());
    }
    row
}

/// `P_k(n, m) = O_k(n, m) / (n!)^k`.
pub fn probability<T: Scalar>(table: &SeqOptTable, n: usize, m: usize) -> T {
    T::from_ratio(&table.get(n, m), &factorial_pow(n as u64, table.k()))
}

/// `sum_{m > threshold} O_k(n, m) / (n!)^k`.
pub fn tail_probability<T: Scalar>(table: &SeqOptTable, n: usize, threshold: u64) -> T {
    let first = threshold.saturating_add(1).min(n as u64 + 1) as usize;
    let tail: BigUint = (first..=n).map(|m| table.get(n, m)).sum();
    T::from_ratio(&tail, &factorial_pow(n as u64, table.k()))
}

/// Which closed form of the concentration threshold to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdForm {
    /// `e ln(n-1) + e`; only meaningful for `k = 1`.
    SingleDimension,
    /// `e k ln(n-1) + (e pi^2 / 6)(2^k - 1)`.
    MultiDimension,
    /// `sqrt(e k) ln(n-1) + (e pi^2 / 6)(2^k - 1)`.
    SqrtCoefficient,
}

impl ThresholdForm {
    /// `SingleDimension` for `k = 1`, `MultiDimension` otherwise.
    pub fn default_for(k: u32) -> Self {
        if k == 1 {
            ThresholdForm::SingleDimension
        } else {
            ThresholdForm::MultiDimension
        }
    }

    /// Certified enclosure of the real number whose ceiling is taken.
    pub fn base_value(self, k: u32, n: u64) -> Bracket {
        assert!(k >= 1 && n >= 2);
        let e = certified::e();
        let ln = certified::ln_int(n - 1);
        let k_exact = Bracket::from_int(i64::from(k));
        let spread = || {
            let pi = certified::pi();
            let two_k_minus_one = BigRational::from_integer((BigInt::one() << k) - 1);
            e.mul(&pi).mul(&pi).scale(&BigRational::new(1.into(), 6.into())).scale(&two_k_minus_one)
        };
        match self {
            ThresholdForm::SingleDimension => e.mul(&ln.add(&Bracket::from_int(1))),
            ThresholdForm::MultiDimension => e.mul(&k_exact).mul(&ln).add(&spread()),
            ThresholdForm::SqrtCoefficient => e.mul(&k_exact).sqrt().mul(&ln).add(&spread()),
        }
    }
}

/// Concentration threshold `M = ceil(base) + m1`.
#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationParams {
    pub k: u32,
    pub n: u64,
    pub m1: u64,
    pub form: ThresholdForm,
    pub base_lo: String,
    pub base_hi: String,
    /// `ceil(base)`.
    pub ceiling: u64,
    /// True when the bracket straddled an integer and the upper ceiling was used.
    pub ceiling_uncertified: bool,
    pub threshold: u64,
}

pub fn concentration_threshold_with(form: ThresholdForm, k: u32, n: u64, m1: u64) -> ConcentrationParams {
    let base = form.base_value(k, n);
    let (ceiling, uncertified) = match base.certain_ceil() {
        Some(c) => (c, false),
        None => (base.upper_ceil(), true),
    };
    let ceiling = ceiling.to_u64().expect("threshold fits in u64");
    ConcentrationParams {
        k,
        n,
        m1,
        form,
        base_lo: certified::decimal(base.lo(), 35, false),
        base_hi: certified::decimal(base.hi(), 35, true),
        ceiling,
        ceiling_uncertified: uncertified,
        threshold: ceiling + m1,
    }
}

/// `M` for the default form of dimension `k`.
pub fn concentration_threshold(k: u32, n: u64, m1: u64) -> ConcentrationParams {
    assert!(k >= 1 && n >= 2 && m1 >= 1, "concentration threshold needs k>=1, n>=2, m1>=1");
    concentration_threshold_with(ThresholdForm::default_for(k), k, n, m1)
}

/// Ceiling of `c e ln(n-1) + c e`, the tilted-distribution analogue of the
/// single-dimension threshold (with `c` an exact rational).
pub fn tilted_ceiling(mu: &BigRational, eta: u64) -> u64 {
    let e = certified::e();
    let ln = certified::ln_int(eta - 1);
    let base = e.scale(mu).mul(&ln.add(&Bracket::from_int(1)));
    base.certain_ceil()
        .unwrap_or_else(|| base.upper_ceil())
        .to_u64()
        .expect("threshold fits in u64")
}
