use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::table::factorial_pow;
use crate::error::NumbersError;

/// Default cap on the number of combinations [`explicit_value`] will sum.
pub const DEFAULT_COMBINATION_BUDGET: u128 = 10_000_000;

/// `C(n, r)` as a `u128`, saturating.
pub fn binomial_u128(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The factor `(j^k - (j-1)^k) / (j-1)^k` contributed by position `j >= 2`.
fn position_factor(j: u64, k: u32) -> BigRational {
    let hi = num_traits::pow(BigInt::from(j), k as usize);
    let lo = num_traits::pow(BigInt::from(j - 1), k as usize);
    BigRational::new(&hi - &lo, lo)
}

/// `O_k(n, m)` as `(n-1)!^k` times the sum, over all `(m-1)`-subsets
/// `{j_1..j_{m-1}}` of `{2..n}`, of the products of the position factors.
///
/// The sum has `C(n-1, m-1)` terms and is refused above `budget`.
pub fn explicit_value(k: u32, n: u64, m: u64, budget: u128) -> Result<BigUint, NumbersError> {
    if n == 0 {
        return Ok(if m == 0 { BigUint::one() } else { BigUint::zero() });
    }
    if m == 0 || m > n {
        return Ok(BigUint::zero());
    }
    let terms = binomial_u128(n - 1, m - 1);
    if terms > budget {
        return Err(NumbersError::CombinationBudget { terms, budget });
    }
    let factors: Vec<BigRational> = (2..=n).map(|j| position_factor(j, k)).collect();
    let sum = combination_sum(&factors, (m - 1) as usize);
    let scaled = sum * BigRational::from_integer(BigInt::from(factorial_pow(n - 1, k)));
    if !scaled.is_integer() {
        return Err(NumbersError::NonIntegral(format!("O_{k}({n},{m}) = {scaled}")));
    }
    Ok(scaled.to_integer().to_biguint().expect("sum of nonnegative terms"))
}

/// Same as [`explicit_value`], with the combination sum split across a
/// rayon pool of `jobs` threads by the leading element of each subset.
pub fn explicit_value_parallel(
    k: u32,
    n: u64,
    m: u64,
    budget: u128,
    jobs: usize,
) -> Result<BigUint, NumbersError> {
    if jobs <= 1 || n < 3 || m < 2 || m > n {
        return explicit_value(k, n, m, budget);
    }
    let terms = binomial_u128(n - 1, m - 1);
    if terms > budget {
        return Err(NumbersError::CombinationBudget { terms, budget });
    }
    let factors: Vec<BigRational> = (2..=n).map(|j| position_factor(j, k)).collect();
    let r = (m - 1) as usize;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| NumbersError::Pool(e.to_string()))?;
    let sum: BigRational = pool.install(|| {
        (0..factors.len())
            .into_par_iter()
            .map(|lead| {
                let rest = &factors[lead + 1..];
                if rest.len() < r - 1 {
                    return BigRational::zero();
                }
                &factors[lead] * combination_sum(rest, r - 1)
            })
            .reduce(BigRational::zero, |a, b| a + b)
    });
    let scaled = sum * BigRational::from_integer(BigInt::from(factorial_pow(n - 1, k)));
    if !scaled.is_integer() {
        return Err(NumbersError::NonIntegral(format!("O_{k}({n},{m}) = {scaled}")));
    }
    Ok(scaled.to_integer().to_biguint().expect("sum of nonnegative terms"))
}

fn combination_sum(factors: &[BigRational], r: usize) -> BigRational {
    factors
        .iter()
        .combinations(r)
        .map(|combo| combo.into_iter().fold(BigRational::one(), |acc, f| acc * f))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        // 2!^2 * (3/1 + 5/4) = 17
        assert_eq!(explicit_value(2, 3, 2, 100).unwrap(), BigUint::from(17u32));
        assert_eq!(explicit_value(1, 5, 1, 100).unwrap(), BigUint::from(24u32));
        assert_eq!(explicit_value(3, 4, 4, 100).unwrap(), BigUint::from(4921u32));
    }

    #[test]
    fn degenerate_arguments() {
        assert_eq!(explicit_value(2, 0, 0, 1).unwrap(), BigUint::one());
        assert!(explicit_value(2, 0, 1, 1).unwrap().is_zero());
        assert!(explicit_value(2, 4, 0, 1).unwrap().is_zero());
        assert!(explicit_value(2, 4, 5, 1).unwrap().is_zero());
        assert!(explicit_value(0, 4, 2, 100).unwrap().is_zero());
        assert_eq!(explicit_value(0, 4, 1, 100).unwrap(), BigUint::one());
    }

    #[test]
    fn budget_is_enforced() {
        // C(29, 14) terms
        let err = explicit_value(1, 30, 15, 1_000).unwrap_err();
        assert!(matches!(err, NumbersError::CombinationBudget { budget: 1_000, .. }));
    }

    #[test]
    fn parallel_matches_serial() {
        for m in 1..=9 {
            assert_eq!(
                explicit_value_parallel(2, 9, m, 1_000_000, 4).unwrap(),
                explicit_value(2, 9, m, 1_000_000).unwrap()
            );
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial_u128(9, 4), 126);
        assert_eq!(binomial_u128(3, 5), 0);
        assert_eq!(binomial_u128(200, 100), u128::MAX);
    }
}
