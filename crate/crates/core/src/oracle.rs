//! Exhaustive enumerations of the combinatorial definitions behind the
//! number triangle, used to validate the recurrence on small instances.
//!
//! Everything here is brute force by intent: the point is an independent
//! path to the same counts. Work is bounded by an explicit budget on the
//! number of permutation tuples visited.

use std::sync::atomic::{AtomicU64, Ordering};

use itertools::Itertools;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::numbers::SeqOptTable;
use crate::pareto::{Label, ParetoFront, RelationVector};
use crate::scalar::format_rational;

/// Default cap on the number of permutation tuples an enumeration visits.
pub const DEFAULT_ENUM_BUDGET: u128 = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration needs {ways} ways, budget is {budget}")]
    Budget { ways: u128, budget: u128 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid input: {0}")]
    Domain(String),
}

/// Progress callback: `(ways enumerated, total ways)`.
pub type Progress<'a> = &'a (dyn Fn(u128, u128) + Sync);

#[derive(Clone, Copy)]
pub struct EnumOptions<'a> {
    pub budget: u128,
    pub progress: Option<Progress<'a>>,
}

impl Default for EnumOptions<'_> {
    fn default() -> Self {
        EnumOptions { budget: DEFAULT_ENUM_BUDGET, progress: None }
    }
}

impl<'a> EnumOptions<'a> {
    pub fn with_budget(budget: u128) -> Self {
        EnumOptions { budget, progress: None }
    }
}

/// `k` permutations of `1..=n`, column `j` holding `a_{1j}..a_{nj}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermTuple {
    n: usize,
    columns: Vec<Vec<u32>>,
}

impl PermTuple {
    pub fn new(columns: Vec<Vec<u32>>) -> Result<Self, OracleError> {
        let n = columns.first().map_or(0, Vec::len);
        for c in &columns {
            validate_permutation(c)?;
            if c.len() != n {
                return Err(OracleError::InvalidPermutation(format!(
                    "columns have lengths {n} and {}",
                    c.len()
                )));
            }
        }
        Ok(PermTuple { n, columns })
    }

    pub fn k(&self) -> usize {
        self.columns.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }
}

fn validate_permutation(perm: &[u32]) -> Result<(), OracleError> {
    let mut seen = vec![false; perm.len()];
    for &v in perm {
        let slot = (v as usize)
            .checked_sub(1)
            .and_then(|i| seen.get_mut(i))
            .ok_or_else(|| OracleError::InvalidPermutation(format!("{perm:?}: value {v} out of range")))?;
        if *slot {
            return Err(OracleError::InvalidPermutation(format!("{perm:?}: value {v} repeated")));
        }
        *slot = true;
    }
    Ok(())
}

/// 0-based positions whose value is smaller than every earlier value.
pub fn record_positions(perm: &[u32]) -> Vec<usize> {
    let mut best = u32::MAX;
    let mut out = Vec::new();
    for (i, &v) in perm.iter().enumerate() {
        if v < best {
            best = v;
            out.push(i);
        }
    }
    out
}

fn record_mask(perm: &[u32]) -> u64 {
    record_positions(perm).into_iter().fold(0, |m, i| m | (1 << i))
}

/// Size of the union of the per-column record sets.
pub fn seq_opt_weight(t: &PermTuple) -> usize {
    let mut hit = vec![false; t.n];
    for c in &t.columns {
        for i in record_positions(c) {
            hit[i] = true;
        }
    }
    hit.into_iter().filter(|&h| h).count()
}

/// Number of ways per weight `m = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountHistogram {
    pub k: u32,
    pub n: usize,
    #[serde(serialize_with = "crate::report::decimal::seq")]
    pub counts: Vec<BigUint>,
}

impl CountHistogram {
    fn from_u64(k: u32, n: usize, counts: Vec<u64>) -> Self {
        CountHistogram { k, n, counts: counts.into_iter().map(BigUint::from).collect() }
    }

    pub fn get(&self, m: usize) -> BigUint {
        self.counts.get(m).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(Zero::is_zero)
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Whether the counts equal row `n` of `table`.
    pub fn matches_row(&self, table: &SeqOptTable) -> bool {
        self.n <= table.n_max() && (0..=self.n).all(|m| self.get(m) == table.get(self.n, m))
    }

    /// Tab-separated counts for `m = 0..=n`, in the table row layout.
    pub fn to_tsv_row(&self) -> String {
        self.counts.iter().map(ToString::to_string).join("\t")
    }
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i)).unwrap_or(u128::MAX)
}

fn ways(n: usize, columns: u32) -> u128 {
    let f = factorial_u128(n);
    (0..columns).try_fold(1u128, |acc, _| acc.checked_mul(f)).unwrap_or(u128::MAX)
}

fn check_budget(n: usize, columns: u32, budget: u128) -> Result<u128, OracleError> {
    let w = ways(n, columns);
    if w > budget {
        return Err(OracleError::Budget { ways: w, budget });
    }
    Ok(w)
}

fn check_size(n: usize) -> Result<(), OracleError> {
    if n > 20 {
        return Err(OracleError::Domain(format!("n = {n} is too large to enumerate")));
    }
    Ok(())
}

fn all_permutations(n: usize) -> Vec<Vec<u32>> {
    (1..=n as u32).permutations(n).collect()
}

/// Calls `f` on every `width`-tuple of indices below `count`, in
/// lexicographic order.
fn for_each_tuple(count: usize, width: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; width];
    if count == 0 && width > 0 {
        return;
    }
    loop {
        f(&idx);
        let mut d = width;
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < count {
                break;
            }
            idx[d] = 0;
        }
    }
}

/// Runs `per_lead(first_index, histogram)` for every choice of the first
/// column in parallel and sums the partial histograms.
fn enumerate_by_lead<F>(
    n: usize,
    leads: usize,
    total: u128,
    opts: &EnumOptions<'_>,
    per_lead: F,
) -> Vec<u64>
where
    F: Fn(usize, &mut [u64]) + Sync,
{
    let done = AtomicU64::new(0);
    let per = total / leads.max(1) as u128;
    (0..leads)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut hist, lead| {
                per_lead(lead, &mut hist);
                let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(p) = opts.progress {
                    p(per * u128::from(finished), total);
                }
                hist
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Histogram of [`seq_opt_weight`] over all `(n!)^k` permutation tuples.
pub fn brute_force_seq_opt(k: u32, n: usize, opts: &EnumOptions<'_>) -> Result<CountHistogram, OracleError> {
    if k == 0 {
        return Err(OracleError::Domain("dimension must be at least 1".into()));
    }
    check_size(n)?;
    let total = check_budget(n, k, opts.budget)?;
    let masks: Vec<u64> = all_permutations(n).iter().map(|p| record_mask(p)).collect();
    let rest = (k - 1) as usize;
    let counts = enumerate_by_lead(n, masks.len(), total, opts, |lead, hist| {
        let base = masks[lead];
        for_each_tuple(masks.len(), rest, |idx| {
            let m = idx.iter().fold(base, |acc, &i| acc | masks[i]);
            hist[m.count_ones() as usize] += 1;
        });
    });
    Ok(CountHistogram::from_u64(k, n, counts))
}

/// Number of boards visible in at least one group. Board `i` is visible in
/// a group when its piece there is taller than every earlier piece.
fn visible_boards(groups: &[&[u8]], n: usize) -> usize {
    let mut tallest = vec![0u8; groups.len()];
    let mut seen = 0;
    for i in 0..n {
        let mut visible = false;
        for (g, heights) in groups.iter().enumerate() {
            if heights[i] > tallest[g] {
                tallest[g] = heights[i];
                visible = true;
            }
        }
        seen += usize::from(visible);
    }
    seen
}

/// Histogram of visible colors over all height assignments of `k` groups
/// of `n` boards.
pub fn color_boards_count(k: u32, n: usize, opts: &EnumOptions<'_>) -> Result<CountHistogram, OracleError> {
    if k == 0 {
        return Err(OracleError::Domain("dimension must be at least 1".into()));
    }
    check_size(n)?;
    let total = check_budget(n, k, opts.budget)?;
    let heights: Vec<Vec<u8>> = (1..=n as u8).permutations(n).collect();
    let rest = (k - 1) as usize;
    let counts = enumerate_by_lead(n, heights.len(), total, opts, |lead, hist| {
        let mut groups: Vec<&[u8]> = vec![&heights[lead]; k as usize];
        for_each_tuple(heights.len(), rest, |idx| {
            for (slot, &i) in groups[1..].iter_mut().zip(idx) {
                *slot = &heights[i];
            }
            hist[visible_boards(&groups, n)] += 1;
        });
    });
    Ok(CountHistogram::from_u64(k, n, counts))
}

/// Number of points not strictly dominated (`<` in every coordinate) by
/// another point.
pub fn pareto_minima_count(points: &[Vec<u64>]) -> usize {
    points
        .iter()
        .filter(|p| !points.iter().any(|q| q.iter().zip(p.iter()).all(|(a, b)| a < b)))
        .count()
}

/// Histogram of [`pareto_minima_count`] over point sets whose first
/// coordinate is `1..=n` and whose other `k - 1` coordinates range over all
/// permutations: the `o_k(n, m)` counts.
pub fn brute_force_opt_numbers(k: u32, n: usize, opts: &EnumOptions<'_>) -> Result<CountHistogram, OracleError> {
    if k == 0 {
        return Err(OracleError::Domain("dimension must be at least 1".into()));
    }
    check_size(n)?;
    let total = check_budget(n, k - 1, opts.budget)?;
    let perms = all_permutations(n);
    let weight = |cols: &[&Vec<u32>]| {
        let points: Vec<Vec<u64>> = (0..n)
            .map(|i| std::iter::once(i as u64 + 1).chain(cols.iter().map(|c| u64::from(c[i]))).collect())
            .collect();
        pareto_minima_count(&points)
    };
    let counts = if k == 1 {
        let mut hist = vec![0u64; n + 1];
        hist[weight(&[])] += 1;
        hist
    } else {
        let rest = (k - 2) as usize;
        enumerate_by_lead(n, perms.len(), total, opts, |lead, hist| {
            let mut cols: Vec<&Vec<u32>> = vec![&perms[lead]; k as usize - 1];
            for_each_tuple(perms.len(), rest, |idx| {
                for (slot, &i) in cols[1..].iter_mut().zip(idx) {
                    *slot = &perms[i];
                }
                hist[weight(&cols)] += 1;
            });
        })
    };
    Ok(CountHistogram::from_u64(k, n, counts))
}

#[derive(Clone, Debug, Serialize)]
pub struct TailDominanceRow {
    pub gamma: usize,
    #[serde(serialize_with = "crate::report::decimal::one")]
    pub lhs: BigUint,
    #[serde(serialize_with = "crate::report::decimal::one")]
    pub rhs: BigUint,
    pub raw_ok: bool,
    pub lhs_probability: String,
    pub rhs_probability: String,
    pub normalized_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailDominanceReport {
    pub k: u32,
    pub n: usize,
    /// Ways behind `o_{k+1}(n, .)`.
    #[serde(serialize_with = "crate::report::decimal::one")]
    pub lhs_total: BigUint,
    /// Ways behind `O_k(n, .)`.
    #[serde(serialize_with = "crate::report::decimal::one")]
    pub rhs_total: BigUint,
    pub rows: Vec<TailDominanceRow>,
    pub raw_verdict: bool,
    pub normalized_verdict: bool,
    pub verdict: bool,
}

/// Compares the upper tails of `o_{k+1}(n, .)` and `O_k(n, .)`, both from
/// enumeration, as raw counts and as probabilities.
pub fn tail_dominance_check(k: u32, n: usize, opts: &EnumOptions<'_>) -> Result<TailDominanceReport, OracleError> {
    let lhs = brute_force_opt_numbers(k + 1, n, opts)?;
    let rhs = brute_force_seq_opt(k, n, opts)?;
    let (lt, rt) = (lhs.total(), rhs.total());
    let mut rows = Vec::with_capacity(n + 1);
    for gamma in 0..=n {
        let l: BigUint = (gamma..=n).map(|m| lhs.get(m)).sum();
        let r: BigUint = (gamma..=n).map(|m| rhs.get(m)).sum();
        let lp = BigRational::new(l.clone().into(), lt.clone().into());
        let rp = BigRational::new(r.clone().into(), rt.clone().into());
        rows.push(TailDominanceRow {
            gamma,
            raw_ok: l >= r,
            normalized_ok: lp >= rp,
            lhs_probability: format_rational(&lp),
            rhs_probability: format_rational(&rp),
            lhs: l,
            rhs: r,
        });
    }
    let raw_verdict = rows.iter().all(|r| r.raw_ok);
    let normalized_verdict = rows.iter().all(|r| r.normalized_ok);
    Ok(TailDominanceReport {
        k,
        n,
        lhs_total: lt,
        rhs_total: rt,
        rows,
        raw_verdict,
        normalized_verdict,
        verdict: raw_verdict && normalized_verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TiesReport {
    pub points: usize,
    pub trials: usize,
    pub seed: u64,
    /// Front size under `(<=, ..)` with equal points collapsed.
    pub weak_weight: usize,
    pub strict_min: usize,
    pub strict_max: usize,
    pub verdict: bool,
}

/// Replaces each coordinate by its rank, ordering equal values randomly.
fn break_ties(points: &[Vec<u64>], rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let k = points[0].len();
    let mut out = vec![vec![0u64; k]; points.len()];
    for d in 0..k {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.shuffle(rng);
        order.sort_by_key(|&i| points[i][d]);
        for (rank, i) in order.into_iter().enumerate() {
            out[i][d] = rank as u64;
        }
    }
    out
}

/// Front size under weak dominance on tied data versus strict minima after
/// `trials` random tie-breaks consistent with the original order.
pub fn ties_monotonicity_check(points: &[Vec<u64>], seed: u64, trials: usize) -> Result<TiesReport, OracleError> {
    let k = points.first().map_or(0, Vec::len);
    if k == 0 || points.iter().any(|p| p.len() != k) {
        return Err(OracleError::Domain("points must be nonempty with a common arity >= 1".into()));
    }
    let labels = points.iter().map(|p| Label::new(p.clone())).collect();
    let weak_weight = ParetoFront::from_set(labels, RelationVector::weak_min(k))
        .map_err(|e| OracleError::Domain(e.to_string()))?
        .len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut strict_min, mut strict_max) = (usize::MAX, 0);
    for _ in 0..trials.max(1) {
        let w = pareto_minima_count(&break_ties(points, &mut rng));
        strict_min = strict_min.min(w);
        strict_max = strict_max.max(w);
    }
    Ok(TiesReport {
        points: points.len(),
        trials: trials.max(1),
        seed,
        weak_weight,
        strict_min,
        strict_max,
        verdict: weak_weight <= strict_min,
    })
}

/// Distribution of `|record_positions|` over all `n!` permutations.
pub fn record_count_distribution(n: usize, opts: &EnumOptions<'_>) -> Result<CountHistogram, OracleError> {
    check_size(n)?;
    check_budget(n, 1, opts.budget)?;
    let mut counts = vec![0u64; n + 1];
    for p in (1..=n as u32).permutations(n) {
        counts[record_positions(&p).len()] += 1;
    }
    Ok(CountHistogram::from_u64(1, n, counts))
}
