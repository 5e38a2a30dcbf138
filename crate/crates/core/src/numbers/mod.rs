//! Sequential optimization numbers `O_k(n, m)`: the recurrence triangle, the
//! combination-sum formula, generating polynomials, upper bounds and the
//! concentration checks built on them.

mod bounds;
mod checks;
mod explicit;
mod poly;
mod table;

pub use bounds::{
    bound_rate, concentration_threshold, concentration_threshold_with, harmonic, probability,
    tail_probability, tilted_ceiling, upper_bound, upper_bound_row, ConcentrationParams, ThresholdForm,
};
pub use checks::{
    bad_case_check, ratio_bound_check, successive_ratio_check, tail_bound_check, tilted_distribution,
    upper_bound_dominance, BadCaseReport, BracketView, DominanceReport, ExactView, RatioReport,
    SingleDimensionRatio, SuccessiveRatioReport, TailReport,
};
pub use explicit::{
    binomial_u128, explicit_value, explicit_value_parallel, DEFAULT_COMBINATION_BUDGET,
};
pub use poly::{
    factor_roots, poly_root_check, rising_poly, stated_roots, IntPolynomial, Polynomial, RootEvaluation, RootReport,
};
pub use table::{build_table, factorial_pow, pow_zero_convention, stirling_u, SeqOptTable};
