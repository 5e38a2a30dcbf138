use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;
use seqopt::cspath::{self, Query, SolveOptions, Variant};
use seqopt::numbers::{self, ThresholdForm};
use seqopt::oracle::{self, CountHistogram, EnumOptions};
use seqopt::report;
use seqopt::scalar::{format_rational, parse_rational};
use seqopt::simulate::{self, ExperimentConfig, Topology, WeightModel};
use seqopt::{MultiWeightGraph, ParetoFront, Weight};
use serde::Serialize;

use crate::error::{read_file, write_file, CliError};
use crate::verify;
use crate::{BruteKind, Cli, Command, FormArg, SimulateArgs, TableFormat, TopologyArg, VariantArg, WeightsArg};

/// Prints `value` as JSON or as the given human-readable text.
fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) {
    if json {
        println!("{}", report::to_json(value));
    } else {
        print!("{}", human());
    }
}

fn emit_report<T: Serialize>(json: bool, value: &T) {
    emit(json, value, || report::to_key_value(value));
}

fn verdict(ok: bool) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

fn need(ok: bool, message: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Input(message()))
    }
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::AtMost => Variant::AtMost,
            VariantArg::Exactly => Variant::Exactly,
        }
    }
}

pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let json = cli.json;
    let jobs = usize::from(cli.jobs);
    match &cli.command {
        Command::Table { k, n, format } => table(json, *k, *n, *format),
        Command::Verify { suite, k, n, which, enum_budget, combination_budget } => {
            let scope = verify::Scope {
                k: *k,
                n: *n,
                enum_budget: enum_budget.enum_budget,
                combination_budget: combination_budget.combination_budget,
            };
            let (r, error) = verify::run(*suite, which, &scope)?;
            emit(json, &r, || verify::render(&r));
            match error {
                Some(e) => Err(e),
                None => verdict(r.passed),
            }
        }
        Command::Solve { graph, query, variant, frontier, max_front } => {
            solve(json, graph, query, (*variant).into(), *frontier, *max_front)
        }
        Command::Simulate(args) => simulate(json, args),
        Command::Explicit { k, n, m, budget } => {
            need(m <= n, || format!("need m <= n (m={m}, n={n})"))?;
            let value = numbers::explicit_value_parallel(*k, *n, *m, budget.combination_budget, jobs)?;
            #[derive(Serialize)]
            struct Out {
                k: u32,
                n: u64,
                m: u64,
                value: String,
            }
            let out = Out { k: *k, n: *n, m: *m, value: value.to_string() };
            emit(json, &out, || format!("{}\n", out.value));
            Ok(())
        }
        Command::Poly { k, n, signed } => {
            let p = numbers::rising_poly(*k, *n, *signed);
            let coefficients: Vec<String> = (0..=*n as usize).map(|m| p.coefficient(m).to_string()).collect();
            #[derive(Serialize)]
            struct Out {
                k: u32,
                n: u64,
                signed: bool,
                coefficients: Vec<String>,
            }
            let out = Out { k: *k, n: *n, signed: *signed, coefficients };
            emit(json, &out, || format!("{}\n", out.coefficients.join("\t")));
            Ok(())
        }
        Command::Roots { k, n, stated } => {
            need(*n >= 2, || "roots need n >= 2".into())?;
            let r = numbers::poly_root_check(*k, *n);
            emit_report(json, &r);
            verdict(if *stated { r.all_zero } else { r.factor_roots_zero })
        }
        Command::Harmonic { i, n } => {
            let h: BigRational = numbers::harmonic(*i, *n);
            let out = numbers::ExactView::from(&h);
            emit(json, &out, || format!("{}\n", format_rational(&h)));
            Ok(())
        }
        Command::Bound { k, n, m } => bound(json, *k, *n, *m),
        Command::Threshold { k, n, m1, form } => {
            need(*k >= 1 && *n >= 2 && *m1 >= 1, || "threshold needs k >= 1, n >= 2, m1 >= 1".into())?;
            let form = match form {
                None => ThresholdForm::default_for(*k),
                Some(FormArg::SingleDimension) => ThresholdForm::SingleDimension,
                Some(FormArg::MultiDimension) => ThresholdForm::MultiDimension,
                Some(FormArg::SqrtCoefficient) => ThresholdForm::SqrtCoefficient,
            };
            emit_report(json, &numbers::concentration_threshold_with(form, *k, *n, *m1));
            Ok(())
        }
        Command::Tail { k, n, m1 } => {
            let table = numbers::build_table(*k, *n as usize);
            let r = numbers::tail_bound_check(&table, *n, *m1)?;
            emit_report(json, &r);
            verdict(r.verdict)
        }
        Command::Ratio { k, n, successive } => {
            if *successive {
                let r = numbers::successive_ratio_check(*k, *n)?;
                emit_report(json, &r);
                verdict(r.verdict)
            } else {
                let r = numbers::ratio_bound_check(*k, *n)?;
                emit_report(json, &r);
                verdict(r.verdict)
            }
        }
        Command::BadCase { eta, mu, m1r } => {
            let mu = parse_rational(mu).ok_or_else(|| CliError::Input(format!("bad rational {mu:?}")))?;
            let r = numbers::bad_case_check(*eta, &mu, *m1r)?;
            emit_report(json, &r);
            verdict(r.verdict)
        }
        Command::Brute { k, n, kind, progress, budget } => brute(json, *k, *n, *kind, *progress, budget.enum_budget),
        Command::Paths { graph, s, t, limit } => {
            let g = load_graph(graph)?;
            let front = cspath::brute_force_paths(&g, *s, *t, *limit)?;
            emit_front(json, &front);
            Ok(())
        }
    }
}

fn table(json: bool, k: u32, n: usize, format: TableFormat) -> Result<(), CliError> {
    let t = numbers::build_table(k, n);
    emit(json, &t, || match format {
        TableFormat::Tsv => t.to_tsv(),
        TableFormat::Bfile => t.to_bfile(),
    });
    Ok(())
}

fn bound(json: bool, k: u32, n: u64, m: Option<u64>) -> Result<(), CliError> {
    need(k >= 1 && n >= 1, || "bound needs k >= 1 and n >= 1".into())?;
    let ms: Vec<u64> = match m {
        Some(m) => {
            need((1..=n).contains(&m), || format!("need 1 <= m <= n (m={m}, n={n})"))?;
            vec![m]
        }
        None => (1..=n).collect(),
    };
    #[derive(Serialize)]
    struct Row {
        m: u64,
        value: numbers::ExactView,
    }
    let rows: Vec<Row> =
        ms.iter().map(|&m| Row { m, value: (&numbers::upper_bound::<BigRational>(k, n, m)).into() }).collect();
    emit(json, &rows, || {
        if m.is_some() {
            format!("{}\n", rows[0].value.exact)
        } else {
            rows.iter().fold(String::new(), |mut s, r| {
                let _ = writeln!(s, "{}\t{}", r.m, r.value.exact);
                s
            })
        }
    });
    Ok(())
}

fn brute(json: bool, k: u32, n: usize, kind: BruteKind, progress: bool, budget: u128) -> Result<(), CliError> {
    let report_progress = |done: u128, total: u128| eprint!("\r{done}/{total}");
    let opts = EnumOptions { budget, progress: progress.then_some(&report_progress as oracle::Progress<'_>) };
    let h: CountHistogram = match kind {
        BruteKind::SeqOpt => oracle::brute_force_seq_opt(k, n, &opts)?,
        BruteKind::ColorBoards => oracle::color_boards_count(k, n, &opts)?,
        BruteKind::OptNumbers => oracle::brute_force_opt_numbers(k, n, &opts)?,
        BruteKind::Records => oracle::record_count_distribution(n, &opts)?,
    };
    if progress {
        eprintln!();
    }
    emit(json, &h, || format!("{}\n", h.to_tsv_row()));
    Ok(())
}

fn load_graph(path: &Path) -> Result<MultiWeightGraph, CliError> {
    let text = read_file(path)?;
    MultiWeightGraph::parse_any(&text).map_err(|e| match e {
        cspath::PathError::Parse { line, message } => {
            CliError::Input(format!("{}: line {line}: {message}", path.display()))
        }
        other => CliError::Input(format!("{}: {other}", path.display())),
    })
}

fn label_text(components: &[Weight]) -> String {
    components.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn emit_front(json: bool, front: &ParetoFront) {
    let labels: Vec<&[Weight]> = front.iter().map(|l| l.components()).collect();
    emit(json, &labels, || labels.iter().map(|l| format!("{}\n", label_text(l))).collect());
}

#[derive(Serialize)]
struct SolveOutput {
    feasible: bool,
    s: usize,
    t: usize,
    bounds: Vec<Weight>,
    variant: Variant,
    /// Node sequence of the witness path.
    path: Option<Vec<usize>>,
    label: Option<Vec<Weight>>,
    frontier: Option<Vec<Vec<Weight>>>,
    p_e: usize,
}

fn solve(
    json: bool,
    graph: &Path,
    query: &str,
    variant: Variant,
    frontier: bool,
    max_front: Option<usize>,
) -> Result<(), CliError> {
    let g = load_graph(graph)?;
    let q = Query::<Weight>::parse(query, g.k())?;
    g.check_node(q.s)?;
    g.check_node(q.t)?;
    let opts = SolveOptions { variant, keep_layers: true, max_front };
    let (table, stats) = cspath::bf_md_with(&g, q.t, &opts)?;
    let feasible = cspath::decide(&table, q.s, &q.bounds)?;
    let front = table.final_front(q.s);
    let (path, label) = match front.iter().find(|l| l.fits_within(&q.bounds)) {
        Some(l) => {
            let walk = cspath::reconstruct_path(&g, &table, q.s, l)?;
            let nodes = std::iter::once(q.s).chain(walk.iter().map(|e| e.to)).collect();
            (Some(nodes), Some(l.components().to_vec()))
        }
        None => (None, None),
    };
    let out = SolveOutput {
        feasible,
        s: q.s,
        t: q.t,
        bounds: q.bounds.clone(),
        variant,
        path,
        label,
        frontier: frontier.then(|| front.iter().map(|l| l.components().to_vec()).collect()),
        p_e: stats.p_e,
    };
    emit(json, &out, || {
        let mut s = String::from(if out.feasible { "YES\n" } else { "NO\n" });
        if let (Some(p), Some(l)) = (&out.path, &out.label) {
            let nodes: Vec<String> = p.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "path {}", nodes.join(" -> "));
            let _ = writeln!(s, "label {}", label_text(l));
        }
        if let Some(f) = &out.frontier {
            let _ = writeln!(s, "frontier {}", f.len());
            for l in f {
                let _ = writeln!(s, "{}", label_text(l));
            }
        }
        s
    });
    Ok(())
}

fn simulation_config(a: &SimulateArgs) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &a.config {
        Some(path) => ExperimentConfig::from_json(&read_file(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => ExperimentConfig::new(2, 10, Topology::Complete, WeightModel::IidUniform { lo: 1, hi: 1000 }),
    };
    if let Some(k) = a.k {
        cfg.k = k;
    }
    if let Some(n) = a.n {
        cfg.n = n;
    }
    let p = a.p.or(match cfg.topology {
        Topology::Gnp { p } => Some(p),
        _ => None,
    });
    let width = a.width.or(match cfg.topology {
        Topology::Layered { width } => Some(width),
        _ => None,
    });
    let graph = a.graph.clone().or(match &cfg.topology {
        Topology::File { path } => Some(path.clone()),
        _ => None,
    });
    let requested = a.topology.or(if a.p.is_some() {
        Some(TopologyArg::Gnp)
    } else if a.width.is_some() {
        Some(TopologyArg::Layered)
    } else if a.graph.is_some() {
        Some(TopologyArg::File)
    } else {
        None
    });
    if let Some(t) = requested {
        cfg.topology = match t {
            TopologyArg::Complete => Topology::Complete,
            TopologyArg::Gnp => Topology::Gnp { p: p.ok_or_else(|| CliError::Input("gnp topology needs --p".into()))? },
            TopologyArg::Layered => Topology::Layered { width: width.unwrap_or(2) },
            TopologyArg::File => {
                Topology::File { path: graph.ok_or_else(|| CliError::Input("file topology needs --graph".into()))? }
            }
        };
    }
    let (lo, hi) = match cfg.weight_model {
        WeightModel::IidUniform { lo, hi } => (lo, hi),
        WeightModel::RandomPermutation => (1, 1000),
    };
    let uniform = WeightModel::IidUniform { lo: a.lo.unwrap_or(lo), hi: a.hi.unwrap_or(hi) };
    match a.weights {
        Some(WeightsArg::Uniform) => cfg.weight_model = uniform,
        Some(WeightsArg::Permutation) => cfg.weight_model = WeightModel::RandomPermutation,
        None if a.lo.is_some() || a.hi.is_some() => cfg.weight_model = uniform,
        None => {}
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(m3) = a.m3 {
        cfg.m3 = m3;
    }
    if let Some(d) = a.fit_degree {
        cfg.fit_degree = d;
    }
    if let Some(v) = a.variant {
        cfg.variant = v.into();
    }
    if a.max_front.is_some() {
        cfg.max_front = a.max_front;
    }
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Serialize)]
struct SimulationSummary {
    csv: String,
    report: String,
    trials: usize,
    failed_trials: usize,
    max_p_e: usize,
    max_p_e_trial: usize,
    c_fit: f64,
    all_within_n_squared: bool,
    monotone_in_m3: bool,
}

#[derive(Serialize)]
struct SimulationReport<'a> {
    config: &'a ExperimentConfig,
    rng: &'static str,
    hypothesis: &'a simulate::HypothesisReport,
    failures: &'a [simulate::TrialFailure],
}

fn simulate(json: bool, a: &SimulateArgs) -> Result<(), CliError> {
    let cfg = simulation_config(a)?;
    let run = simulate::run_experiment(&cfg)?;
    for f in &run.failures {
        eprintln!("seqopt: trial {}: {}", f.trial, f.error);
    }
    if run.records.is_empty() {
        let budget = run.failures.iter().any(|f| f.budget);
        let message = "every trial failed".to_string();
        return Err(if budget { CliError::Budget(message) } else { CliError::Input(message) });
    }
    let csv = simulate::to_csv_string(&run.records)?;
    write_file(&a.out, &csv)?;
    let hypothesis = simulate::hypothesis_report(&run.records, &cfg)?;
    let full = SimulationReport { config: &cfg, rng: simulate::RNG_ID, hypothesis: &hypothesis, failures: &run.failures };
    let txt = a.report.with_extension("txt");
    let js = a.report.with_extension("json");
    write_file(&txt, &report::to_key_value(&full))?;
    write_file(&js, &report::to_json(&full))?;
    let summary = SimulationSummary {
        csv: a.out.display().to_string(),
        report: txt.display().to_string(),
        trials: run.records.len(),
        failed_trials: run.failures.len(),
        max_p_e: hypothesis.max_p_e,
        max_p_e_trial: hypothesis.max_p_e_trial,
        c_fit: hypothesis.c_fit,
        all_within_n_squared: hypothesis.all_within_n_squared,
        monotone_in_m3: hypothesis.monotone_in_m3,
    };
    emit_report(json, &summary);
    if run.failures.iter().any(|f| f.budget) {
        return Err(CliError::Budget(format!("{} trial(s) exceeded the front budget", run.failures.len())));
    }
    Ok(())
}
