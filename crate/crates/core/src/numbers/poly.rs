use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use serde::Serialize;

use crate::scalar::format_rational;

/// Dense univariate polynomial, `coefficients[i]` multiplies `x^i`.
///
/// Kept normalized: no trailing zero coefficients, so the zero polynomial
/// has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<T> {
    coefficients: Vec<T>,
}

impl<T: Num + Clone> Polynomial<T> {
    pub fn new(mut coefficients: Vec<T>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    pub fn zero() -> Self {
        Polynomial { coefficients: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::new(vec![T::one()])
    }

    /// `a x + b`.
    pub fn linear(a: T, b: T) -> Self {
        Polynomial::new(vec![b, a])
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coefficient(&self, i: usize) -> T {
        self.coefficients.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coefficients
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<U: Num + Clone>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coefficients.iter().map(f).collect())
    }
}

impl<T: Num + Clone> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

/// Integer polynomial with arbitrary-precision coefficients.
pub type IntPolynomial = Polynomial<BigInt>;

impl IntPolynomial {
    pub fn to_rational(&self) -> Polynomial<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

/// `x * prod_{j=2..n} ((j^k - (j-1)^k) x + (j-1)^k)`, or with `- (j-1)^k`
/// in each factor when `signed`. The coefficient of `x^m` is `O_k(n, m)`
/// (times `(-1)^(n+m)` in the signed case).
pub fn rising_poly(k: u32, n: u64, signed: bool) -> IntPolynomial {
    assert!(n >= 1, "rising_poly needs n >= 1");
    let mut acc = Polynomial::linear(BigInt::one(), BigInt::zero());
    for j in 2..=n {
        let hi = num_traits::pow(BigInt::from(j), k as usize);
        let lo = num_traits::pow(BigInt::from(j - 1), k as usize);
        let constant = if signed { -lo.clone() } else { lo.clone() };
        acc = &acc * &Polynomial::linear(hi - lo, constant);
    }
    acc
}

/// The stated roots: `0` and, for `m = 2..n`, `((m-1)^k - m^k)/(m-1)^k`
/// (unsigned) or its negation (signed).
pub fn stated_roots(k: u32, n: u64, signed: bool) -> Vec<BigRational> {
    let mut roots = vec![BigRational::zero()];
    for m in 2..=n {
        let prev = num_traits::pow(BigInt::from(m - 1), k as usize);
        let cur = num_traits::pow(BigInt::from(m), k as usize);
        let r = BigRational::new(&prev - &cur, prev);
        roots.push(if signed { -r } else { r });
    }
    roots
}

/// Zeros of the linear factors themselves: `0` and, for `m = 2..n`,
/// `-(m-1)^k / (m^k - (m-1)^k)` (negated when `signed`). These are the
/// reciprocals of the nonzero [`stated_roots`]. `None` marks a constant
/// factor (`k = 0`).
pub fn factor_roots(k: u32, n: u64, signed: bool) -> Vec<Option<BigRational>> {
    let mut roots = vec![Some(BigRational::zero())];
    for m in 2..=n {
        let prev = num_traits::pow(BigInt::from(m - 1), k as usize);
        let cur = num_traits::pow(BigInt::from(m), k as usize);
        let slope = &cur - &prev;
        roots.push((!slope.is_zero()).then(|| {
            let r = BigRational::new(-prev, slope);
            if signed { -r } else { r }
        }));
    }
    roots
}

#[derive(Clone, Debug, Serialize)]
pub struct RootEvaluation {
    pub m: u64,
    pub stated_root: String,
    pub stated_value: String,
    pub stated_signed_root: String,
    pub stated_signed_value: String,
    pub factor_root: Option<String>,
    pub factor_value: Option<String>,
    pub factor_signed_value: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub k: u32,
    pub n: u64,
    pub evaluations: Vec<RootEvaluation>,
    /// Both polynomials vanish at every stated root.
    pub all_zero: bool,
    /// Both polynomials vanish at every factor root.
    pub factor_roots_zero: bool,
    /// The stated roots are the reciprocals of the factor roots (m >= 2).
    pub stated_are_reciprocals: bool,
}

/// Evaluates both polynomials at every stated root, and at the zeros of the
/// linear factors, in exact arithmetic.
pub fn poly_root_check(k: u32, n: u64) -> RootReport {
    assert!(n >= 2, "poly_root_check needs n >= 2");
    let up = rising_poly(k, n, false).to_rational();
    let down = rising_poly(k, n, true).to_rational();
    let stated_up = stated_roots(k, n, false);
    let stated_down = stated_roots(k, n, true);
    let factor_up = factor_roots(k, n, false);
    let mut all_zero = true;
    let mut factor_roots_zero = true;
    let mut stated_are_reciprocals = true;
    let mut evaluations = Vec::with_capacity(stated_up.len());
    for (i, ((r_up, r_down), f_up)) in stated_up.iter().zip(&stated_down).zip(&factor_up).enumerate() {
        let m = if i == 0 { 0 } else { i as u64 + 1 };
        let v_up = up.eval(r_up);
        let v_down = down.eval(r_down);
        all_zero &= v_up.is_zero() && v_down.is_zero();
        let (factor_root, factor_value, factor_signed_value) = match f_up {
            Some(f) => {
                let fv = up.eval(f);
                let fs = down.eval(&-f.clone());
                factor_roots_zero &= fv.is_zero() && fs.is_zero();
                if i > 0 {
                    stated_are_reciprocals &= !r_up.is_zero() && (r_up.clone() * f).is_one();
                }
                (Some(format_rational(f)), Some(format_rational(&fv)), Some(format_rational(&fs)))
            }
            None => {
                stated_are_reciprocals = false;
                (None, None, None)
            }
        };
        evaluations.push(RootEvaluation {
            m,
            stated_root: format_rational(r_up),
            stated_value: format_rational(&v_up),
            stated_signed_root: format_rational(r_down),
            stated_signed_value: format_rational(&v_down),
            factor_root,
            factor_value,
            factor_signed_value,
        });
    }
    RootReport { k, n, evaluations, all_zero, factor_roots_zero, stated_are_reciprocals }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &IntPolynomial) -> Vec<i64> {
        p.coefficients().iter().map(|c| c.try_into().unwrap()).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn expansions() {
        assert_eq!(ints(&rising_poly(1, 3, false)), vec![0, 2, 3, 1]);
        assert_eq!(ints(&rising_poly(2, 2, false)), vec![0, 1, 3]);
        assert_eq!(ints(&rising_poly(2, 2, true)), vec![0, -1, 3]);
        assert_eq!(ints(&rising_poly(0, 4, false)), vec![0, 1]);
        assert_eq!(ints(&rising_poly(0, 4, true)), vec![0, -1]);
    }

    #[test]
    fn evaluation_at_roots() {
        let p = rising_poly(1, 3, false).to_rational();
        assert!(p.eval(&q(-1, 1)).is_zero());
        let p = rising_poly(2, 3, false).to_rational();
        // x(3x+1)(5x+4) vanishes at -1/3 and -4/5, not at their reciprocals
        assert!(p.eval(&q(-4, 5)).is_zero());
        assert!(p.eval(&q(-1, 3)).is_zero());
        assert_eq!(p.eval(&q(-5, 4)), q(-495, 64));
        assert!(!p.eval(&q(1, 1)).is_zero());
    }

    #[test]
    fn root_report() {
        let r = poly_root_check(2, 3);
        assert!(!r.all_zero);
        assert!(r.factor_roots_zero);
        assert!(r.stated_are_reciprocals);
        assert_eq!(r.evaluations.len(), 3);
        assert_eq!(r.evaluations[2].m, 3);
        assert_eq!(r.evaluations[2].stated_root, "-5/4");
        assert_eq!(r.evaluations[2].stated_signed_root, "5/4");
        assert_eq!(r.evaluations[2].factor_root.as_deref(), Some("-4/5"));
        // for k = 1, n = 2 the two coincide
        let r = poly_root_check(1, 2);
        assert!(r.all_zero && r.factor_roots_zero);
        let r = poly_root_check(0, 3);
        assert!(r.all_zero);
        assert!(r.evaluations[1].factor_root.is_none());
    }

    #[test]
    fn normalization() {
        let p = Polynomial::new(vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Polynomial::<BigInt>::new(vec![BigInt::from(0)]).is_zero());
        assert!((&p * &Polynomial::zero()).is_zero());
        assert_eq!(p.coefficient(7), BigInt::from(0));
    }

    #[test]
    fn works_over_floats() {
        let p = rising_poly(1, 4, false).map(|c| c.to_string().parse::<f64>().unwrap());
        assert_eq!(p.eval(&-3.0), 0.0);
        assert_eq!(p.eval(&1.0), 24.0);
    }
}
