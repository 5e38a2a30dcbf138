//! Exact sequential optimization numbers, dominance fronts, and the
//! multi-criteria Bellman-Ford label-correcting solver built on them.
//!
//! * [`numbers`]: the `O_k(n, m)` triangle and its bounds, in exact arithmetic
//! * [`oracle`]: brute-force enumerations of the underlying combinatorics
//! * [`pareto`]: canonical antichains under componentwise relations
//! * [`cspath`]: multi-criteria Bellman-Ford and an exhaustive path oracle
//! * [`simulate`]: seeded random experiments measuring front growth
//!
//! Numeric routines are generic over [`Scalar`]; the aliases below fix the
//! types used throughout the binaries.

pub mod certified;
pub mod cspath;
pub mod error;
pub mod numbers;
pub mod oracle;
pub mod pareto;
pub mod report;
pub mod scalar;
pub mod simulate;

pub use scalar::Scalar;

/// Arbitrary-precision nonnegative count.
pub type BigCount = num_bigint::BigUint;
/// Exact rational, always in lowest terms.
pub type ExactRational = num_rational::BigRational;
/// Integer weight type used by the solver front end.
pub type Weight = u64;
pub type Label = pareto::Label<Weight>;
pub type ParetoFront = pareto::ParetoFront<Weight>;
pub type MultiWeightGraph = cspath::MultiWeightGraph<Weight>;
pub type LabelTable = cspath::LabelTable<Weight>;
pub use numbers::IntPolynomial;
