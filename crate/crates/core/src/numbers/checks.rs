//! Exact-versus-certified inequality checks on the count triangles.
//!
//! Each check computes its rational side exactly and encloses the
//! transcendental side in a [`Bracket`]; the verdict is `true` only if the
//! inequality holds against the adverse bracket endpoint.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::bounds::{
    concentration_threshold, harmonic, probability, tail_probability, tilted_ceiling, upper_bound_row,
    ThresholdForm,
};
use super::table::{build_table, factorial_pow, SeqOptTable};
use crate::certified::{self, decimal, required_margin, Bracket};
use crate::error::NumbersError;
use crate::scalar::{format_rational, Scalar};

const SHOWN_DIGITS: usize = 35;

#[derive(Clone, Debug, Serialize)]
pub struct BracketView {
    pub lo: String,
    pub hi: String,
    pub width_ok: bool,
}

impl From<&Bracket> for BracketView {
    fn from(b: &Bracket) -> Self {
        BracketView {
            lo: decimal(b.lo(), SHOWN_DIGITS, false),
            hi: decimal(b.hi(), SHOWN_DIGITS, true),
            width_ok: b.width() <= required_margin(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactView {
    pub exact: String,
    pub approx: f64,
}

impl From<&BigRational> for ExactView {
    fn from(v: &BigRational) -> Self {
        let exact = format_rational(v);
        // very long fractions are summarized by their approximation
        let exact = if exact.len() > 200 { format!("{}…({} chars)", &exact[..60], exact.len()) } else { exact };
        ExactView { exact, approx: v.approx_f64() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TailReport {
    pub k: u32,
    pub n: u64,
    pub m1: u64,
    pub form: ThresholdForm,
    pub threshold: u64,
    pub tail: ExactView,
    pub bound: BracketView,
    pub verdict: bool,
}

/// Tail mass beyond the concentration threshold against `e^{-m1}`.
pub fn tail_bound_check(table: &SeqOptTable, n: u64, m1: u64) -> Result<TailReport, NumbersError> {
    let k = table.k();
    if k < 1 || n < 2 || m1 < 1 {
        return Err(NumbersError::Domain(format!("tail check needs k>=1, n>=2, m1>=1 (k={k}, n={n}, m1={m1})")));
    }
    if n as usize > table.n_max() {
        return Err(NumbersError::Domain(format!("n={n} beyond table n_max={}", table.n_max())));
    }
    let params = concentration_threshold(k, n, m1);
    let tail: BigRational = tail_probability(table, n as usize, params.threshold);
    let bound = certified::exp_rational(&-BigRational::from_integer(BigInt::from(m1)));
    let bound_view = BracketView::from(&bound);
    let verdict = bound.certainly_above(&tail) && bound_view.width_ok;
    Ok(TailReport {
        k,
        n,
        m1,
        form: params.form,
        threshold: params.threshold,
        tail: (&tail).into(),
        bound: bound_view,
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SingleDimensionRatio {
    /// `(n-1)/n * e^{H_1(n-1) - ln(n-1)}`.
    pub middle: BracketView,
    pub lhs_below_middle: bool,
    pub middle_below_e: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioReport {
    pub k: u32,
    pub n: u64,
    /// `sum_m upper_bound(k,n,m) / (n!)^k`.
    pub lhs: ExactView,
    /// `((n-1)/n)^k e^{(pi^2/6)(2^k-1)}`.
    pub rhs: BracketView,
    pub single_dimension: Option<SingleDimensionRatio>,
    pub verdict: bool,
}

/// Total upper-bound mass relative to the true total `(n!)^k`.
pub fn ratio_bound_check(k: u32, n: u64) -> Result<RatioReport, NumbersError> {
    if k < 1 || n < 2 {
        return Err(NumbersError::Domain(format!("ratio check needs k>=1, n>=2 (k={k}, n={n})")));
    }
    let total: BigRational = upper_bound_row::<BigRational>(k, n).into_iter().sum();
    let lhs = total / BigRational::from_biguint(&factorial_pow(n, k));

    let pi = certified::pi();
    let exponent = pi
        .mul(&pi)
        .scale(&BigRational::new(1.into(), 6.into()))
        .scale(&BigRational::from_integer((BigInt::one() << k) - 1));
    let shrink = BigRational::new(BigInt::from(n - 1), BigInt::from(n));
    let rhs = exponent.exp().scale(&num_traits::pow(shrink.clone(), k as usize));
    let rhs_view = BracketView::from(&rhs);
    let mut verdict = rhs.certainly_above(&lhs) && rhs_view.width_ok;

    let single_dimension = (k == 1).then(|| {
        let h: BigRational = harmonic(1, n - 1);
        let middle = Bracket::exact(h.clone()).sub(&certified::ln_int(n - 1)).exp().scale(&shrink);
        let e = certified::e();
        // the middle term is exactly e^H / n; when the bracket cannot separate
        // it from lhs, exact partial sums of e^H settle the comparison
        let lhs_below_middle = middle.certainly_above(&lhs)
            || certified::exp_series_reaches(&h, &(&lhs * BigRational::from_integer(n.into())), n as usize + 256);
        let middle_below_e = middle.certainly_below(e.lo());
        verdict &= lhs_below_middle && middle_below_e;
        SingleDimensionRatio { middle: (&middle).into(), lhs_below_middle, middle_below_e }
    });

    Ok(RatioReport { k, n, lhs: (&lhs).into(), rhs: rhs_view, single_dimension, verdict })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuccessiveRatioReport {
    pub k: u32,
    pub n: u64,
    /// First `m` from which the ratio must stay below `1/e`.
    pub start: u64,
    pub checked: u64,
    pub worst_ratio: Option<f64>,
    pub verdict: bool,
}

/// Checks `P_max(n, m+1) / P_max(n, m) <= 1/e` for every
/// `m >= ceil(e k ln(n-1) + (e pi^2/6)(2^k-1))` up to `n - 1`.
pub fn successive_ratio_check(k: u32, n: u64) -> Result<SuccessiveRatioReport, NumbersError> {
    if k < 1 || n < 2 {
        return Err(NumbersError::Domain(format!("ratio check needs k>=1, n>=2 (k={k}, n={n})")));
    }
    let base = ThresholdForm::MultiDimension.base_value(k, n);
    let start = num_traits::ToPrimitive::to_u64(&base.upper_ceil()).expect("small threshold");
    let row = upper_bound_row::<BigRational>(k, n);
    let inv_e = certified::e().recip();
    let mut verdict = true;
    let mut checked = 0;
    let mut worst: Option<BigRational> = None;
    for m in start.max(1)..n {
        let ratio = &row[m as usize + 1] / &row[m as usize];
        verdict &= inv_e.certainly_above(&ratio);
        checked += 1;
        if worst.as_ref().is_none_or(|w| &ratio > w) {
            worst = Some(ratio);
        }
    }
    Ok(SuccessiveRatioReport {
        k,
        n,
        start,
        checked,
        worst_ratio: worst.map(|w| w.approx_f64()),
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DominanceReport {
    pub k: u32,
    pub n: u64,
    pub violations: Vec<u64>,
    pub equal_at: Vec<u64>,
    pub verdict: bool,
}

/// `upper_bound(k, n, m) >= O_k(n, m)` for all `1 <= m <= n`, exactly.
pub fn upper_bound_dominance(table: &SeqOptTable, n: u64) -> Result<DominanceReport, NumbersError> {
    let k = table.k();
    if k < 1 || n < 2 || n as usize > table.n_max() {
        return Err(NumbersError::Domain(format!("dominance check needs k>=1, 2<=n<=n_max (k={k}, n={n})")));
    }
    let row = upper_bound_row::<BigRational>(k, n);
    let mut violations = Vec::new();
    let mut equal_at = Vec::new();
    for m in 1..=n {
        let exact = BigRational::from_biguint(&table.get(n as usize, m as usize));
        let bound = &row[m as usize];
        if bound < &exact {
            violations.push(m);
        } else if bound == &exact {
            equal_at.push(m);
        }
    }
    Ok(DominanceReport { k, n, verdict: violations.is_empty(), violations, equal_at })
}

#[derive(Clone, Debug, Serialize)]
pub struct BadCaseReport {
    pub eta: u64,
    pub mu: String,
    pub m1r: u64,
    pub threshold: u64,
    /// Normalizer making the tilted distribution sum to one.
    pub normalizer: ExactView,
    pub normalizer_at_most_one: bool,
    pub total_mass_is_one: bool,
    pub tail: ExactView,
    pub bound: BracketView,
    pub verdict: bool,
}

/// Tilts the single-dimension distribution by `mu^m`, renormalizes, and
/// checks the tail beyond `ceil(e mu ln(eta-1) + e mu) + m1r` against
/// `e^{-m1r}`.
pub fn bad_case_check(eta: u64, mu: &BigRational, m1r: u64) -> Result<BadCaseReport, NumbersError> {
    if mu <= &BigRational::one() {
        return Err(NumbersError::Domain(format!("tilt must exceed 1, got {}", format_rational(mu))));
    }
    if eta < 2 || m1r < 1 {
        return Err(NumbersError::Domain(format!("bad case needs eta>=2, m1r>=1 (eta={eta}, m1r={m1r})")));
    }
    let (weights, mass) = tilt(eta, mu);
    let normalizer = mass.recip();
    let tilted: Vec<BigRational> = weights.iter().map(|w| w * &normalizer).collect();
    let total: BigRational = tilted.iter().sum();

    let threshold = tilted_ceiling(mu, eta) + m1r;
    let tail: BigRational = tilted
        .iter()
        .skip(threshold.saturating_add(1).min(eta + 1) as usize)
        .sum();
    let bound = certified::exp_rational(&-BigRational::from_integer(BigInt::from(m1r)));
    let bound_view = BracketView::from(&bound);
    let normalizer_at_most_one = normalizer <= BigRational::one();
    let total_mass_is_one = total == BigRational::one();
    let verdict =
        bound.certainly_above(&tail) && bound_view.width_ok && normalizer_at_most_one && total_mass_is_one;
    Ok(BadCaseReport {
        eta,
        mu: format_rational(mu),
        m1r,
        threshold,
        normalizer: (&normalizer).into(),
        normalizer_at_most_one,
        total_mass_is_one,
        tail: (&tail).into(),
        bound: bound_view,
        verdict,
    })
}

/// The tilted distribution itself, `m = 0..=eta`.
pub fn tilted_distribution(eta: u64, mu: &BigRational) -> Vec<BigRational> {
    let (weights, mass) = tilt(eta, mu);
    weights.into_iter().map(|w| w / &mass).collect()
}

/// Unnormalized weights `P_1(eta, m) mu^m` and their sum.
fn tilt(eta: u64, mu: &BigRational) -> (Vec<BigRational>, BigRational) {
    let table = build_table(1, eta as usize);
    let weights: Vec<BigRational> = (0..=eta as usize)
        .map(|m| probability::<BigRational>(&table, eta as usize, m) * num_traits::pow(mu.clone(), m))
        .collect();
    let mass = weights.iter().sum();
    (weights, mass)
}
