use std::time::Instant;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use seqopt::numbers::*;
use seqopt::oracle::*;
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Bounds,
    Poly,
    Lemmas,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Bounds => "bounds",
            Suite::Poly => "poly",
            Suite::Lemmas => "lemmas",
            Suite::All => "all",
        }
    }
}

/// Parameters shared by every check. `k` and `n` narrow the default grids.
pub struct Scope {
    pub k: Option<u32>,
    pub n: Option<usize>,
    pub enum_budget: u128,
    pub combination_budget: u128,
}

impl Scope {
    fn opts(&self) -> EnumOptions<'static> {
        EnumOptions::with_budget(self.enum_budget)
    }

    /// `(k, n_max)` pairs: the defaults, or the single requested dimension.
    fn pairs(&self, defaults: &[(u32, usize)]) -> Vec<(u32, usize)> {
        match self.k {
            Some(k) => {
                let fallback = defaults.iter().find(|p| p.0 == k).map_or(defaults[defaults.len() - 1].1, |p| p.1);
                vec![(k, self.n.unwrap_or(fallback))]
            }
            None => defaults.iter().map(|&(k, n)| (k, self.n.unwrap_or(n))).collect(),
        }
    }

    fn ks(&self, defaults: &[u32]) -> Vec<u32> {
        self.k.map_or_else(|| defaults.to_vec(), |k| vec![k])
    }

    fn ns(&self, defaults: &[u64]) -> Vec<u64> {
        self.n.map_or_else(|| defaults.to_vec(), |n| vec![n as u64])
    }

    fn n_max(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn expect(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(case());
        }
    }
}

type Run = fn(&Scope) -> Result<Tally, CliError>;

struct Check {
    suite: Suite,
    name: &'static str,
    /// Part of the suite unless named explicitly with `--which`.
    default_on: bool,
    run: Run,
}

const CHECKS: &[Check] = &[
    Check { suite: Suite::Oracle, name: "seq-opt", default_on: true, run: seq_opt },
    Check { suite: Suite::Oracle, name: "color-boards", default_on: true, run: color_boards },
    Check { suite: Suite::Oracle, name: "explicit", default_on: true, run: explicit },
    Check { suite: Suite::Poly, name: "coefficients", default_on: true, run: coefficients },
    Check { suite: Suite::Poly, name: "signed", default_on: true, run: signed },
    Check { suite: Suite::Poly, name: "factor-roots", default_on: true, run: factor_roots_check },
    Check { suite: Suite::Poly, name: "stated-roots", default_on: false, run: stated_roots_check },
    Check { suite: Suite::Bounds, name: "upper-bound", default_on: true, run: upper_bound_check },
    Check { suite: Suite::Bounds, name: "tail", default_on: true, run: tail },
    Check { suite: Suite::Bounds, name: "ratio", default_on: true, run: ratio },
    Check { suite: Suite::Bounds, name: "successive-ratio", default_on: true, run: successive_ratio },
    Check { suite: Suite::Bounds, name: "bad-case", default_on: true, run: bad_case },
    Check { suite: Suite::Lemmas, name: "stirling", default_on: true, run: stirling },
    Check { suite: Suite::Lemmas, name: "records", default_on: true, run: records },
    Check { suite: Suite::Lemmas, name: "opt-numbers", default_on: true, run: opt_numbers },
    Check { suite: Suite::Lemmas, name: "tail-dominance", default_on: true, run: tail_dominance },
    Check { suite: Suite::Lemmas, name: "ties", default_on: true, run: ties },
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

#[derive(Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<String>,
    pub error: Option<String>,
    pub seconds: f64,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

const SHOWN_FAILURES: usize = 10;

/// Runs the selected checks. Errors other than failed checks (budget, bad
/// parameters) are recorded per check and returned as the worst one.
pub fn run(suite: Suite, which: &[String], scope: &Scope) -> Result<(VerifyReport, Option<CliError>), CliError> {
    for w in which {
        if !CHECKS.iter().any(|c| c.name == w) {
            return Err(CliError::Input(format!("unknown check {w:?}; known: {}", check_names().join(", "))));
        }
    }
    let selected = CHECKS.iter().filter(|c| {
        (suite == Suite::All || c.suite == suite)
            && if which.is_empty() { c.default_on } else { which.iter().any(|w| w == c.name) }
    });
    let mut checks = Vec::new();
    let mut worst: Option<CliError> = None;
    for c in selected {
        let start = Instant::now();
        let outcome = (c.run)(scope);
        let seconds = start.elapsed().as_secs_f64();
        let (cases, failures, error) = match outcome {
            Ok(t) => (t.cases, t.failures, None),
            Err(e) => {
                let msg = e.to_string();
                worst = Some(match (worst.take(), e) {
                    (Some(b @ CliError::Budget(_)), _) | (_, b @ CliError::Budget(_)) => b,
                    (prev, e) => prev.unwrap_or(e),
                });
                (0, Vec::new(), Some(msg))
            }
        };
        let passed = error.is_none() && failures.is_empty();
        let mut failures = failures;
        let hidden = failures.len().saturating_sub(SHOWN_FAILURES);
        failures.truncate(SHOWN_FAILURES);
        if hidden > 0 {
            failures.push(format!("... {hidden} more"));
        }
        checks.push(CheckOutcome { suite: c.suite.name(), name: c.name, cases, passed, failures, error, seconds });
    }
    if checks.is_empty() {
        return Err(CliError::Input(format!("no checks selected in suite {}", suite.name())));
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok((VerifyReport { suite: suite.name(), passed, checks }, worst))
}

pub fn render(report: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {}/{} cases={} time={:.3}s\n", c.suite, c.name, c.cases, c.seconds));
        for f in &c.failures {
            out.push_str(&format!("  failed: {f}\n"));
        }
        if let Some(e) = &c.error {
            out.push_str(&format!("  error: {e}\n"));
        }
    }
    let total = report.checks.len();
    let passed = report.checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{total} checks passed\n"));
    out
}

const ORACLE_GRID: [(u32, usize); 3] = [(1, 7), (2, 5), (3, 4)];

fn seq_opt(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for (k, n_max) in s.pairs(&ORACLE_GRID) {
        let table = build_table(k, n_max);
        for n in 0..=n_max {
            let h = brute_force_seq_opt(k, n, &s.opts())?;
            t.expect(h.matches_row(&table), || format!("k={k} n={n}: enumerated {}", h.to_tsv_row()));
        }
    }
    Ok(t)
}

fn color_boards(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for (k, n_max) in s.pairs(&ORACLE_GRID) {
        for n in 0..=n_max {
            let boards = color_boards_count(k, n, &s.opts())?;
            let direct = brute_force_seq_opt(k, n, &s.opts())?;
            t.expect(boards == direct, || format!("k={k} n={n}: boards {}", boards.to_tsv_row()));
        }
    }
    Ok(t)
}

fn explicit(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for (k, n_max) in s.pairs(&[(0, 10), (1, 10), (2, 10), (3, 10)]) {
        let table = build_table(k, n_max);
        for n in 0..=n_max {
            for m in 0..=n {
                let v = explicit_value(k, n as u64, m as u64, s.combination_budget)?;
                t.expect(v == table.get(n, m), || format!("k={k} n={n} m={m}: formula gives {v}"));
            }
        }
    }
    Ok(t)
}

const POLY_GRID: [(u32, usize); 4] = [(0, 10), (1, 10), (2, 10), (3, 10)];

fn coefficients(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for (k, n_max) in s.pairs(&POLY_GRID) {
        let table = build_table(k, n_max);
        for n in 1..=n_max {
            let p = rising_poly(k, n as u64, false);
            for m in 0..=n {
                let c = p.coefficient(m);
                t.expect(c == BigInt::from(table.get(n, m)), || format!("k={k} n={n} m={m}: coefficient {c}"));
            }
        }
    }
    Ok(t)
}

fn signed(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for (k, n_max) in s.pairs(&POLY_GRID) {
        let table = build_table(k, n_max);
        for n in 1..=n_max {
            let p = rising_poly(k, n as u64, true);
            for m in 0..=n {
                let sign = if (n + m) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let c = p.coefficient(m);
                t.expect(c == sign * BigInt::from(table.get(n, m)), || format!("k={k} n={n} m={m}: coefficient {c}"));
            }
        }
    }
    Ok(t)
}

const ROOT_GRID: [(u32, usize); 3] = [(1, 10), (2, 10), (3, 10)];

fn factor_roots_check(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for (k, n_max) in s.pairs(&ROOT_GRID) {
        for n in 2..=n_max as u64 {
            let r = poly_root_check(k, n);
            t.expect(r.factor_roots_zero, || format!("k={k} n={n}: a linear-factor root does not vanish"));
        }
    }
    Ok(t)
}

fn stated_roots_check(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for (k, n_max) in s.pairs(&ROOT_GRID) {
        for n in 2..=n_max as u64 {
            let r = poly_root_check(k, n);
            t.expect(r.all_zero, || {
                let bad = r.evaluations.iter().find(|e| e.stated_value != "0").expect("some root misses");
                format!("k={k} n={n}: p({}) = {}", bad.stated_root, bad.stated_value)
            });
        }
    }
    Ok(t)
}

fn upper_bound_check(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for (k, n_max) in s.pairs(&[(1, 30), (2, 30), (3, 30)]) {
        let table = build_table(k, n_max);
        for n in 2..=n_max as u64 {
            let r = upper_bound_dominance(&table, n)?;
            t.expect(r.verdict, || format!("k={k} n={n}: bound below entry at m={:?}", r.violations));
        }
        if n_max >= 2 {
            let corner = upper_bound::<BigRational>(k, 2, 2);
            let expected = BigRational::from_integer((BigInt::one() << k) - 1);
            let exact = BigRational::from_integer(table.get(2, 2).into());
            t.expect(corner == expected && corner == exact, || format!("k={k}: bound at (2,2) is {corner}"));
        }
    }
    Ok(t)
}

const CONCENTRATION_NS: [u64; 4] = [5, 10, 50, 100];

fn tail(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    let ns = s.ns(&CONCENTRATION_NS);
    for k in s.ks(&[1, 2]) {
        let table = build_table(k, *ns.iter().max().expect("nonempty grid") as usize);
        for &n in &ns {
            for m1 in 1..=5 {
                let r = tail_bound_check(&table, n, m1)?;
                t.expect(r.verdict, || format!("k={k} n={n} m1={m1}: tail {} vs bound {}", r.tail.approx, r.bound.hi));
            }
        }
    }
    Ok(t)
}

fn ratio(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for k in s.ks(&[1, 2]) {
        for n in s.ns(&CONCENTRATION_NS) {
            let r = ratio_bound_check(k, n)?;
            t.expect(r.verdict, || format!("k={k} n={n}: ratio {} vs {}", r.lhs.approx, r.rhs.lo));
        }
    }
    Ok(t)
}

fn successive_ratio(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for k in s.ks(&[1, 2]) {
        for n in 2..=s.n_max(50) as u64 {
            let r = successive_ratio_check(k, n)?;
            t.expect(r.verdict, || format!("k={k} n={n}: worst ratio {:?}", r.worst_ratio));
        }
    }
    Ok(t)
}

fn bad_case(_: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    let mus = [BigRational::new(3.into(), 2.into()), BigRational::from_integer(2.into())];
    for eta in [10u64, 50, 100] {
        for mu in &mus {
            for m1r in 1..=3 {
                let r = bad_case_check(eta, mu, m1r)?;
                t.expect(r.verdict, || format!("eta={eta} mu={mu} m1r={m1r}: tail {}", r.tail.approx));
            }
        }
    }
    Ok(t)
}

fn stirling(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    let n_max = s.n_max(20);
    let (table, reference) = (build_table(1, n_max), stirling_u(n_max));
    for n in 0..=n_max {
        for m in 0..=n {
            t.expect(table.get(n, m) == reference.get(n, m), || format!("n={n} m={m}: {}", table.get(n, m)));
        }
    }
    Ok(t)
}

fn records(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    let n_max = s.n_max(8);
    let reference = stirling_u(n_max);
    for n in 0..=n_max {
        let h = record_count_distribution(n, &s.opts())?;
        t.expect(h.matches_row(&reference), || format!("n={n}: {}", h.to_tsv_row()));
    }
    Ok(t)
}

fn opt_numbers(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    let n_max = s.n_max(6);
    let reference = stirling_u(n_max);
    for n in 0..=n_max {
        let h = brute_force_opt_numbers(2, n, &s.opts())?;
        t.expect(h.matches_row(&reference), || format!("n={n}: {}", h.to_tsv_row()));
    }
    Ok(t)
}

fn tail_dominance(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for (k, n_max) in s.pairs(&[(1, 5), (2, 4)]) {
        for n in 1..=n_max {
            let r = tail_dominance_check(k, n, &s.opts())?;
            t.expect(r.normalized_verdict, || {
                let g = r.rows.iter().find(|row| !row.normalized_ok).map_or(0, |row| row.gamma);
                format!("k={k} n={n}: tail of o_(k+1) below O_k at gamma={g}")
            });
        }
    }
    Ok(t)
}

fn ties(s: &Scope) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for size in 1..=s.n_max(12) as u64 {
        for k in s.ks(&[2, 3]) {
            // coordinates in a small range so that ties are common
            let points: Vec<Vec<u64>> =
                (0..size).map(|i| (0..k as u64).map(|d| (i * i + 3 * d * i + d) % (2 + d)).collect()).collect();
            let r = ties_monotonicity_check(&points, size, 20)?;
            t.expect(r.verdict, || format!("k={k} size={size}: weak {} vs strict min {}", r.weak_weight, r.strict_min));
        }
    }
    Ok(t)
}
