//! Acceptance criteria, one PASS/FAIL line each with its runtime limit.
//!
//! Exits nonzero when a criterion fails, except for criteria listed in
//! `KNOWN_UNATTAINABLE`, which still print FAIL; set
//! `SEQOPT_ACCEPTANCE_STRICT=1` to make those fail the run as well.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use seqopt::cspath::{self, Variant};
use seqopt::numbers::*;
use seqopt::oracle::*;
use seqopt::pareto::{ParetoFront, RelationVector};
use seqopt::simulate::{self, ExperimentConfig, Topology, WeightModel};
use seqopt::MultiWeightGraph;

const TABLE_K2: &str = include_str!("../../core/tests/data/table_k2.tsv");
const TABLE_K3: &str = include_str!("../../core/tests/data/table_k3.tsv");

/// The stated polynomial roots are the reciprocals of the true ones, so the
/// root clause cannot hold beyond `k = 1, n = 2`.
const KNOWN_UNATTAINABLE: &[u32] = &[5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Unsigned Stirling numbers by `s(n+1, m) = n s(n, m) + s(n, m-1)`.
fn stirling_rows(n_max: usize) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![BigUint::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let row = (0..=n + 1)
            .map(|m| {
                let keep = prev.get(m).map_or_else(BigUint::zero, |v| v * BigUint::from(n));
                let step = if m == 0 { BigUint::zero() } else { prev[m - 1].clone() };
                keep + step
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn run_table(k: u32) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_seqopt"))
        .args(["table", "--k", &k.to_string(), "--n", "6"])
        .output()
        .expect("seqopt binary runs");
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn table_reproduction() -> Outcome {
    let (k2, k3) = (run_table(2), run_table(3));
    let t2 = SeqOptTable::parse_tsv(2, &k2);
    let t3 = SeqOptTable::parse_tsv(3, &k3);
    let named = matches!((&t2, &t3), (Ok(a), Ok(b))
        if a.get(6, 2) == BigUint::from(86836u32) && b.get(6, 4) == BigUint::from(137868205u32));
    let count = |t: &Result<SeqOptTable, _>, nonzero: bool| {
        t.as_ref().map_or(0, |t| t.rows().flatten().filter(|v| !nonzero || !v.is_zero()).count())
    };
    outcome(
        k2 == TABLE_K2 && k3 == TABLE_K3 && named,
        format!(
            "byte-identical: k=2 {}, k=3 {}; triangle cells {}/{} ({}/{} nonzero); O_2(6,2)=86836, O_3(6,4)=137868205: {named}",
            k2 == TABLE_K2,
            k3 == TABLE_K3,
            count(&t2, false),
            count(&t3, false),
            count(&t2, true),
            count(&t3, true),
        ),
    )
}

fn oracle_matches_recurrence() -> Outcome {
    let opts = EnumOptions::default();
    let mut rows = 0;
    let mut bad = Vec::new();
    let mut largest = Vec::new();
    for (k, n_max) in [(1u32, 7usize), (2, 5), (3, 4)] {
        let table = build_table(k, n_max);
        for n in 0..=n_max {
            match brute_force_seq_opt(k, n, &opts) {
                Ok(h) => {
                    rows += 1;
                    if !h.matches_row(&table) || h.total() != num_traits::pow(factorial(n), k as usize) {
                        bad.push(format!("k={k} n={n}"));
                    }
                    if n == n_max {
                        largest.push(format!("k={k}: {} tuples", h.total()));
                    }
                }
                Err(e) => bad.push(format!("k={k} n={n}: {e}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("{rows} rows equal; {}; mismatches {bad:?}", largest.join(", ")))
}

fn stirling_identity() -> Outcome {
    let reference = stirling_rows(20);
    let table = build_table(1, 20);
    let mut checked = 0;
    let mut bad = Vec::new();
    for (n, row) in reference.iter().enumerate() {
        for (m, v) in row.iter().enumerate() {
            checked += 1;
            if &table.get(n, m) != v {
                bad.push((n, m));
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} entries, n <= 20; mismatches {bad:?}"))
}

fn explicit_formula() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 0..=3u32 {
        let table = build_table(k, 10);
        for n in 0..=10usize {
            for m in 0..=n {
                checked += 1;
                match explicit_value(k, n as u64, m as u64, DEFAULT_COMBINATION_BUDGET) {
                    Ok(v) if v == table.get(n, m) => {}
                    Ok(v) => bad.push(format!("k={k} n={n} m={m}: {v}")),
                    Err(e) => bad.push(format!("k={k} n={n} m={m}: {e}")),
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} entries, k <= 3, n <= 10; mismatches {bad:?}"))
}

fn polynomial_identities() -> Outcome {
    let (mut coeff_bad, mut signed_bad, mut entries) = (0, 0, 0);
    for k in 0..=3u32 {
        let table = build_table(k, 10);
        for n in 1..=10usize {
            let up = rising_poly(k, n as u64, false);
            let down = rising_poly(k, n as u64, true);
            for m in 0..=n {
                entries += 1;
                let v = BigInt::from(table.get(n, m));
                let sign = if (n + m) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                coeff_bad += usize::from(up.coefficient(m) != v);
                signed_bad += usize::from(down.coefficient(m) != sign * v);
            }
        }
    }
    let (mut cases, mut stated_ok, mut factor_ok, mut reciprocal_ok) = (0, 0, 0, 0);
    let mut first_miss = None;
    for k in 1..=3u32 {
        for n in 2..=10u64 {
            let r = poly_root_check(k, n);
            cases += 1;
            stated_ok += usize::from(r.all_zero);
            factor_ok += usize::from(r.factor_roots_zero);
            reciprocal_ok += usize::from(r.stated_are_reciprocals);
            if !r.all_zero && first_miss.is_none() {
                let e = r.evaluations.iter().find(|e| e.stated_value != "0").expect("a root misses");
                first_miss = Some(format!("k={k} n={n}: p({}) = {}", e.stated_root, e.stated_value));
            }
        }
    }
    outcome(
        coeff_bad == 0 && signed_bad == 0 && stated_ok == cases,
        format!(
            "coefficients {}/{entries}, signed {}/{entries}; stated roots vanish in {stated_ok}/{cases} cases (first miss {}); \
             linear-factor roots vanish in {factor_ok}/{cases}, stated roots are their reciprocals in {reciprocal_ok}/{cases}",
            entries - coeff_bad,
            entries - signed_bad,
            first_miss.unwrap_or_else(|| "none".into()),
        ),
    )
}

fn upper_bound_dominates() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut corners = Vec::new();
    for k in 1..=3u32 {
        let table = build_table(k, 30);
        for n in 2..=30u64 {
            for m in 1..=n {
                checked += 1;
                let bound = upper_bound::<BigRational>(k, n, m);
                if bound < BigRational::from_integer(table.get(n as usize, m as usize).into()) {
                    bad.push(format!("k={k} n={n} m={m}"));
                }
            }
        }
        let corner = upper_bound::<BigRational>(k, 2, 2);
        let expected = BigRational::from_integer((BigInt::one() << k) - 1);
        let entry = BigRational::from_integer(table.get(2, 2).into());
        if corner != expected || corner != entry {
            bad.push(format!("k={k}: (2,2) bound {corner}, entry {entry}"));
        }
        corners.push(format!("k={k}: {corner}"));
    }
    outcome(bad.is_empty(), format!("{checked} entries; equality at (2,2): {}; violations {bad:?}", corners.join(", ")))
}

const CONCENTRATION_NS: [u64; 4] = [5, 10, 50, 100];

fn tail_bounds() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in [1u32, 2] {
        let table = build_table(k, 100);
        for n in CONCENTRATION_NS {
            for m1 in 1..=5 {
                checked += 1;
                match tail_bound_check(&table, n, m1) {
                    Ok(r) if r.verdict && r.bound.width_ok => {}
                    Ok(r) => bad.push(format!("k={k} n={n} m1={m1}: tail {}", r.tail.approx)),
                    Err(e) => bad.push(format!("k={k} n={n} m1={m1}: {e}")),
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} cases, brackets narrower than 1e-30; failures {bad:?}"))
}

fn ratio_bounds() -> Outcome {
    let mut checked = 0;
    let mut single = 0;
    let mut bad = Vec::new();
    for k in [1u32, 2] {
        for n in CONCENTRATION_NS {
            checked += 1;
            match ratio_bound_check(k, n) {
                Ok(r) => {
                    let form_ok = match (&r.single_dimension, k) {
                        (Some(s), 1) => {
                            single += 1;
                            s.lhs_below_middle && s.middle_below_e
                        }
                        (None, 1) => false,
                        _ => true,
                    };
                    if !(r.verdict && form_ok && r.rhs.width_ok) {
                        bad.push(format!("k={k} n={n}"));
                    }
                }
                Err(e) => bad.push(format!("k={k} n={n}: {e}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} cases, {single} with the k=1 chain up to e; failures {bad:?}"))
}

fn dimension_lemmas() -> Outcome {
    let opts = EnumOptions::default();
    let reference = stirling_rows(6);
    let mut bad = Vec::new();
    for (n, row) in reference.iter().enumerate() {
        match brute_force_opt_numbers(2, n, &opts) {
            Ok(h) if h.counts == *row => {}
            Ok(h) => bad.push(format!("o_2 n={n}: {}", h.to_tsv_row())),
            Err(e) => bad.push(format!("o_2 n={n}: {e}")),
        }
    }
    let mut gammas = 0;
    for (k, n_max) in [(1u32, 5usize), (2, 4)] {
        for n in 1..=n_max {
            match tail_dominance_check(k, n, &opts) {
                Ok(r) => {
                    gammas += r.rows.len();
                    if !r.normalized_verdict {
                        bad.push(format!("tails k={k} n={n}"));
                    }
                }
                Err(e) => bad.push(format!("tails k={k} n={n}: {e}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("o_2 rows n <= 6 equal Stirling; {gammas} tail comparisons; failures {bad:?}"))
}

fn bad_case() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mus = [BigRational::new(3.into(), 2.into()), BigRational::from_integer(2.into())];
    for eta in [10u64, 50, 100] {
        for mu in &mus {
            for m1r in 1..=3 {
                checked += 1;
                match bad_case_check(eta, mu, m1r) {
                    Ok(r) if r.verdict => {}
                    Ok(r) => bad.push(format!("eta={eta} mu={mu} m1r={m1r}: tail {}", r.tail.approx)),
                    Err(e) => bad.push(format!("eta={eta} mu={mu} m1r={m1r}: {e}")),
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} cases; failures {bad:?}"))
}

/// Seeded instance `i`: `n` in 2..=8, topology cycling through complete,
/// G(n, p) and layered, uniform weights in `[lo, hi]`.
fn instance(i: u64, k: usize, lo: u64, hi: u64) -> MultiWeightGraph {
    let n = 2 + (i % 7) as usize;
    let topology = match i % 5 {
        0 => Topology::Complete,
        1 => Topology::Gnp { p: 0.3 },
        2 => Topology::Gnp { p: 0.6 },
        3 => Topology::Layered { width: 2 },
        _ => Topology::Layered { width: 3 },
    };
    let mut cfg = ExperimentConfig::new(k, n, topology, WeightModel::IidUniform { lo, hi });
    cfg.seed = 0x5eed_0000 + i;
    simulate::gen_graph(&cfg, 0).expect("valid instance")
}

fn bound_grid(front: &ParetoFront<u64>) -> Vec<u64> {
    let top = front.iter().flat_map(|l| l.components().iter().copied()).max().unwrap_or(0) + 1;
    (0..5).map(|j| top * j / 4).collect()
}

fn solver_correctness() -> Outcome {
    let (mut fronts, mut decisions) = (0, 0);
    let mut bad = Vec::new();
    for i in 0..200 {
        let g = instance(i, 2, 1, 20);
        let t = g.node_count() - 1;
        let (table, _) = cspath::bf_md(&g, t, Variant::AtMost).expect("solver runs");
        for s in 0..g.node_count() {
            let oracle = cspath::brute_force_paths(&g, s, t, cspath::DEFAULT_BRUTE_LIMIT).expect("small graph");
            fronts += 1;
            if table.final_front(s) != &oracle {
                bad.push(format!("graph {i} s={s}: front"));
            }
            if s != 0 {
                continue;
            }
            let grid = bound_grid(&oracle);
            for &b0 in &grid {
                for &b1 in &grid {
                    decisions += 1;
                    let expected = oracle.iter().any(|l| l.fits_within(&[b0, b1]));
                    if cspath::decide(&table, s, &[b0, b1]).ok() != Some(expected) {
                        bad.push(format!("graph {i}: decide({b0},{b1})"));
                    }
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("200 graphs, {fronts} fronts, {decisions} decisions agree; disagreements {bad:?}"))
}

fn classic_bellman_ford(g: &MultiWeightGraph, t: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; g.node_count()];
    dist[t] = Some(0);
    for _ in 1..g.node_count() {
        let prev = dist.clone();
        for a in g.arcs() {
            if let Some(d) = prev[a.to] {
                let cand = d + a.weights.components()[0];
                if dist[a.from].is_none_or(|cur| cand < cur) {
                    dist[a.from] = Some(cand);
                }
            }
        }
    }
    dist
}

fn variant_and_degeneration() -> Outcome {
    let mut bad = Vec::new();
    let mut walks = 0;
    for i in 0..100 {
        let g = instance(1000 + i, 2, 1, 20);
        let t = 0;
        let (at_most, _) = cspath::bf_md(&g, t, Variant::AtMost).expect("solver runs");
        let (exactly, _) = cspath::bf_md(&g, t, Variant::Exactly).expect("solver runs");
        for v in 0..g.node_count() {
            let mut acc = ParetoFront::empty(RelationVector::weak_min(2));
            for layer in 0..=at_most.last_layer() {
                acc = acc.merge(exactly.front(layer, v).expect("layers kept")).expect("same arity");
                if Some(&acc) != at_most.front(layer, v) {
                    bad.push(format!("union graph {i} v={v} i={layer}"));
                }
            }
        }
    }
    for i in 0..100 {
        let g = instance(2000 + i, 1, 1, 20);
        let t = g.node_count() - 1;
        let (table, stats) = cspath::bf_md(&g, t, Variant::AtMost).expect("solver runs");
        let dist = classic_bellman_ford(&g, t);
        let sizes_ok = stats.sizes.iter().flatten().all(|&s| s <= 1);
        let values_ok = (0..g.node_count()).all(|v| {
            table.final_front(v).iter().map(|l| l.components()[0]).next() == dist[v]
        });
        if !(sizes_ok && values_ok) {
            bad.push(format!("k=1 graph {i}"));
        }
    }
    for i in 0..100 {
        let g = instance(3000 + i, 2, 1, 20);
        let t = g.node_count() - 1;
        for variant in [Variant::AtMost, Variant::Exactly] {
            let (table, _) = cspath::bf_md(&g, t, variant).expect("solver runs");
            for s in 0..g.node_count() {
                for label in table.final_front(s).iter() {
                    walks += 1;
                    let simple = cspath::reconstruct_path(&g, &table, s, label).is_ok_and(|w| {
                        let mut seen = vec![false; g.node_count()];
                        seen[s] = true;
                        w.iter().all(|e| !std::mem::replace(&mut seen[e.to], true))
                            && w.last().map_or(s, |e| e.to) == t
                    });
                    if !simple {
                        bad.push(format!("walk graph {i} s={s} {label}"));
                    }
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("3 x 100 instances, {walks} witness walks simple; failures {bad:?}"))
}

fn simulation_properties() -> Outcome {
    let mut bad = Vec::new();
    let mut maxima = Vec::new();
    for k in [2usize, 3, 4] {
        let mut cfg = ExperimentConfig::new(k, 20, Topology::Complete, WeightModel::IidUniform { lo: 1, hi: 1000 });
        cfg.trials = 30;
        cfg.seed = 20 + k as u64;
        let first = simulate::run_experiment(&cfg).expect("valid config");
        let second = simulate::run_experiment(&cfg).expect("valid config");
        if !first.failures.is_empty() {
            bad.push(format!("k={k}: {} failed trials", first.failures.len()));
            continue;
        }
        let csv_a = simulate::to_csv_string(&first.records).expect("records");
        let csv_b = simulate::to_csv_string(&second.records).expect("records");
        let r = simulate::hypothesis_report(&first.records, &cfg).expect("records");
        if !r.all_within_n_squared {
            bad.push(format!("k={k}: p_ei above n^2"));
        }
        if !r.monotone_in_m3 {
            bad.push(format!("k={k}: exceedance grows with M3"));
        }
        if csv_a != csv_b {
            bad.push(format!("k={k}: rerun CSV differs"));
        }
        maxima.push(format!("k={k} max p_e {} (c_fit {:.3})", r.max_p_e, r.c_fit));
    }
    outcome(bad.is_empty(), format!("n=20, 30 trials each: {}; limit n^2 = 400; failures {bad:?}", maxima.join(", ")))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 13] = [
        (1, "table reproduction", 1, table_reproduction),
        (2, "enumeration equals recurrence", 30, oracle_matches_recurrence),
        (3, "one dimension is Stirling", 1, stirling_identity),
        (4, "combination-sum formula", 30, explicit_formula),
        (5, "generating polynomial roots and signs", 5, polynomial_identities),
        (6, "upper bound dominates entries", 30, upper_bound_dominates),
        (7, "tail concentration", 60, tail_bounds),
        (8, "normalized bound mass", 10, ratio_bounds),
        (9, "two-dimensional minima and tail dominance", 60, dimension_lemmas),
        (10, "tilted bad case", 10, bad_case),
        (11, "solver equals exhaustive search", 60, solver_correctness),
        (12, "variant and degeneration invariants", 60, variant_and_degeneration),
        (13, "simulation properties", 300, simulation_properties),
    ];
    let strict = std::env::var("SEQOPT_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut passed = 0;
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let o = result.unwrap_or_else(|_| outcome(false, "panicked"));
        let in_time = elapsed < limit;
        let pass = o.pass && in_time;
        let status = if pass { "PASS" } else { "FAIL" };
        let late = if in_time { "" } else { " OVER TIME LIMIT" };
        println!("[{status}] {id:>2} {name}: {:.3}s (limit {}s){late} | {}", elapsed.as_secs_f64(), limit.as_secs(), o.detail);
        if pass {
            passed += 1;
        } else {
            failed.push(id);
        }
    }
    let unexpected: Vec<u32> = failed.iter().copied().filter(|id| strict || !KNOWN_UNATTAINABLE.contains(id)).collect();
    println!("acceptance: {passed}/13 criteria passed; failed {failed:?}; known unattainable {KNOWN_UNATTAINABLE:?}");
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
