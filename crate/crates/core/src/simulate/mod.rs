//! Seeded random experiments that measure how large the solver's fronts
//! grow per iteration, plus the fit of a polylogarithmic growth bound.

mod csv_io;
mod hypothesis;

use std::path::PathBuf;
use std::time::Instant;

use rand::distr::{Distribution, Uniform};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cspath::{bf_md_with, PathError, SolveOptions, Variant};
use crate::{MultiWeightGraph, Weight};

pub use csv_io::{emit_csv, parse_csv, to_csv_string, RNG_ID};
pub use hypothesis::{hypothesis_report, ExceedanceRow, HypothesisReport};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("graph file {path}: {source}")]
    GraphFile { path: String, source: PathError },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("no records")]
    Empty,
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Topology {
    /// Every ordered pair of distinct nodes, each arc weighted independently.
    Complete,
    /// Each ordered pair present independently with probability `p`.
    Gnp { p: f64 },
    /// Consecutive blocks of `width` nodes, with arcs both ways between
    /// every pair of nodes in adjacent blocks.
    Layered { width: usize },
    /// Structure read from a graph file; weights are redrawn.
    File { path: PathBuf },
}

impl Topology {
    pub fn name(&self) -> String {
        match self {
            Topology::Complete => "complete".into(),
            Topology::Gnp { p } => format!("gnp({p})"),
            Topology::Layered { width } => format!("layered({width})"),
            Topology::File { path } => format!("file({})", path.display()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightModel {
    /// Independent draws from `lo..=hi`.
    IidUniform { lo: Weight, hi: Weight },
    /// Per dimension, a random permutation of `1..=|arcs|` over the arcs.
    RandomPermutation,
}

fn default_trials() -> usize {
    1
}

fn default_m3() -> u64 {
    10
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub k: usize,
    pub n: usize,
    pub topology: Topology,
    pub weight_model: WeightModel,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    /// Additive margin of the growth bound.
    #[serde(default = "default_m3")]
    pub m3: u64,
    /// Degree of the polynomial factor `n^d` in the growth bound.
    #[serde(default)]
    pub fit_degree: u32,
    #[serde(default)]
    pub variant: Variant,
    /// Per-trial cap on any single front; exceeding it fails that trial only.
    #[serde(default)]
    pub max_front: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(k: usize, n: usize, topology: Topology, weight_model: WeightModel) -> Self {
        ExperimentConfig {
            k,
            n,
            topology,
            weight_model,
            trials: 1,
            seed: 0,
            m3: default_m3(),
            fit_degree: 0,
            variant: Variant::AtMost,
            max_front: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SimError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| SimError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::Config(m));
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !matches!(self.topology, Topology::File { .. }) && self.n < 2 {
            return bad("n must be at least 2".into());
        }
        match &self.topology {
            Topology::Gnp { p } if !(0.0..=1.0).contains(p) => return bad(format!("gnp probability {p} is outside [0, 1]")),
            Topology::Layered { width: 0 } => return bad("layer width must be at least 1".into()),
            _ => {}
        }
        if let WeightModel::IidUniform { lo, hi } = self.weight_model {
            if lo < 1 {
                return bad("uniform weights need lo >= 1".into());
            }
            if hi < lo {
                return bad(format!("uniform weights need lo <= hi, got {lo} > {hi}"));
            }
        }
        Ok(())
    }

    fn load_template(&self) -> Result<Option<MultiWeightGraph>, SimError> {
        let Topology::File { path } = &self.topology else {
            return Ok(None);
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| SimError::Io { path: path.display().to_string(), message: e.to_string() })?;
        let g = MultiWeightGraph::parse_any(&text)
            .map_err(|source| SimError::GraphFile { path: path.display().to_string(), source })?;
        if g.node_count() < 2 {
            return Err(SimError::Config("graph file needs at least 2 nodes".into()));
        }
        Ok(Some(g))
    }
}

/// The generator for one trial: ChaCha8 seeded from `seed`, on stream `trial`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn structure(cfg: &ExperimentConfig, template: Option<&MultiWeightGraph>, rng: &mut ChaCha8Rng) -> (usize, bool, Vec<(usize, usize)>) {
    let n = cfg.n;
    match &cfg.topology {
        Topology::Complete => {
            (n, true, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect())
        }
        Topology::Gnp { p } => {
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.random_bool(*p) {
                        pairs.push((u, v));
                    }
                }
            }
            (n, true, pairs)
        }
        Topology::Layered { width } => {
            let mut pairs = Vec::new();
            let layers: Vec<Vec<usize>> = (0..n).collect::<Vec<_>>().chunks(*width).map(<[usize]>::to_vec).collect();
            for pair in layers.windows(2) {
                for &u in &pair[0] {
                    for &v in &pair[1] {
                        pairs.push((u, v));
                        pairs.push((v, u));
                    }
                }
            }
            (n, true, pairs)
        }
        Topology::File { .. } => {
            let g = template.expect("file topology has a template");
            (g.node_count(), g.is_directed(), g.edges().iter().map(|e| (e.from, e.to)).collect())
        }
    }
}

fn draw_weights(cfg: &ExperimentConfig, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Weight>> {
    let mut columns: Vec<Vec<Weight>> = Vec::with_capacity(cfg.k);
    for _ in 0..cfg.k {
        let column = match cfg.weight_model {
            WeightModel::IidUniform { lo, hi } => {
                let dist = Uniform::new_inclusive(lo, hi).expect("validated bounds");
                (0..count).map(|_| dist.sample(rng)).collect()
            }
            WeightModel::RandomPermutation => {
                let mut c: Vec<Weight> = (1..=count as Weight).collect();
                c.shuffle(rng);
                c
            }
        };
        columns.push(column);
    }
    (0..count).map(|e| columns.iter().map(|c| c[e]).collect()).collect()
}

fn generate(cfg: &ExperimentConfig, template: Option<&MultiWeightGraph>, trial: usize) -> Result<MultiWeightGraph, SimError> {
    let mut rng = trial_rng(cfg.seed, trial);
    let (n, directed, pairs) = structure(cfg, template, &mut rng);
    let weights = draw_weights(cfg, pairs.len(), &mut rng);
    Ok(MultiWeightGraph::from_edges(
        n,
        cfg.k,
        directed,
        pairs.into_iter().zip(weights).map(|((u, v), w)| (u, v, w)),
    )?)
}

/// The graph of trial `trial`, a pure function of `(config, trial)`.
pub fn gen_graph(cfg: &ExperimentConfig, trial: usize) -> Result<MultiWeightGraph, SimError> {
    cfg.validate()?;
    let template = cfg.load_template()?;
    generate(cfg, template.as_ref(), trial)
}

/// Front growth of one trial: `series[i - 1] = p_ei` for `i = 1..n-1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub trial: usize,
    pub series: Vec<usize>,
    pub p_e: usize,
    pub seed: u64,
    /// Wall time in milliseconds; not part of the CSV.
    #[serde(default)]
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub error: String,
    pub budget: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRun {
    pub records: Vec<ExperimentRecord>,
    pub failures: Vec<TrialFailure>,
}

/// Runs every trial (in parallel, reported in trial order). A trial that
/// exceeds the front budget is listed under `failures` without affecting
/// the others.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun, SimError> {
    cfg.validate()?;
    let template = cfg.load_template()?;
    let opts = SolveOptions { variant: cfg.variant, keep_layers: false, max_front: cfg.max_front };
    let outcomes: Vec<Result<ExperimentRecord, TrialFailure>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let start = Instant::now();
            let fail = |e: SimError| TrialFailure {
                trial,
                budget: matches!(e, SimError::Path(PathError::FrontBudget { .. })),
                error: e.to_string(),
            };
            let g = generate(cfg, template.as_ref(), trial).map_err(fail)?;
            let target = g.node_count() - 1;
            let (_, stats) = bf_md_with(&g, target, &opts).map_err(|e| fail(e.into()))?;
            let series = stats.p_ei[1..].to_vec();
            Ok(ExperimentRecord {
                trial,
                p_e: series.iter().copied().max().unwrap_or(0),
                series,
                seed: cfg.seed,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect();
    let mut run = ExperimentRun { records: Vec::new(), failures: Vec::new() };
    for o in outcomes {
        match o {
            Ok(r) => run.records.push(r),
            Err(f) => run.failures.push(f),
        }
    }
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize, k: usize) -> ExperimentConfig {
        ExperimentConfig::new(k, n, Topology::Complete, WeightModel::IidUniform { lo: 1, hi: 100 })
    }

    #[test]
    fn complete_graph_shape() {
        let g = gen_graph(&complete(4, 2), 0).unwrap();
        assert_eq!(g.arcs().len(), 12);
        assert_eq!(g, gen_graph(&complete(4, 2), 0).unwrap());
        assert_ne!(g, gen_graph(&complete(4, 2), 1).unwrap());
    }

    #[test]
    fn permutation_weights() {
        let mut cfg = complete(4, 3);
        cfg.weight_model = WeightModel::RandomPermutation;
        let g = gen_graph(&cfg, 5).unwrap();
        for d in 0..3 {
            let mut col: Vec<Weight> = g.arcs().iter().map(|a| a.weights.components()[d]).collect();
            col.sort_unstable();
            assert_eq!(col, (1..=12).collect::<Vec<Weight>>());
        }
    }

    #[test]
    fn other_topologies() {
        let mut cfg = complete(6, 2);
        cfg.topology = Topology::Layered { width: 2 };
        assert_eq!(gen_graph(&cfg, 0).unwrap().arcs().len(), 2 * 2 * 4);
        cfg.topology = Topology::Gnp { p: 0.0 };
        assert_eq!(gen_graph(&cfg, 0).unwrap().arcs().len(), 0);
        cfg.topology = Topology::Gnp { p: 1.0 };
        assert_eq!(gen_graph(&cfg, 0).unwrap().arcs().len(), 30);
        cfg.topology = Topology::Gnp { p: 1.5 };
        assert!(matches!(gen_graph(&cfg, 0), Err(SimError::Config(_))));
    }

    #[test]
    fn config_validation() {
        let mut cfg = complete(4, 2);
        cfg.weight_model = WeightModel::IidUniform { lo: 0, hi: 3 };
        assert!(cfg.validate().is_err());
        cfg.weight_model = WeightModel::IidUniform { lo: 4, hi: 3 };
        assert!(cfg.validate().is_err());
        let mut cfg = complete(4, 2);
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
        let json = r#"{"k":2,"n":5,"topology":{"kind":"gnp","p":0.5},"weight_model":{"kind":"iid_uniform","lo":1,"hi":9},"trials":3,"seed":11}"#;
        let cfg = ExperimentConfig::from_json(json).unwrap();
        assert_eq!(cfg.topology, Topology::Gnp { p: 0.5 });
        assert_eq!(cfg.m3, 10);
        assert!(ExperimentConfig::from_json(r#"{"k":2}"#).is_err());
    }

    #[test]
    fn run_shape_and_determinism() {
        let mut cfg = complete(6, 2);
        cfg.trials = 3;
        cfg.seed = 42;
        let run = run_experiment(&cfg).unwrap();
        assert_eq!(run.records.len(), 3);
        assert!(run.failures.is_empty());
        for (t, r) in run.records.iter().enumerate() {
            assert_eq!(r.trial, t);
            assert_eq!(r.series.len(), 5);
            assert_eq!(r.p_e, *r.series.iter().max().unwrap());
        }
        let again = run_experiment(&cfg).unwrap();
        assert_eq!(to_csv_string(&run.records).unwrap(), to_csv_string(&again.records).unwrap());
    }

    #[test]
    fn single_criterion_fronts_are_singletons() {
        let mut cfg = complete(7, 1);
        cfg.trials = 4;
        let run = run_experiment(&cfg).unwrap();
        assert!(run.records.iter().all(|r| r.series.iter().all(|&p| p == 1)));
    }

    #[test]
    fn budget_failures_are_per_trial() {
        let mut cfg = complete(8, 3);
        cfg.trials = 4;
        cfg.max_front = Some(1);
        let run = run_experiment(&cfg).unwrap();
        assert_eq!(run.failures.len() + run.records.len(), 4);
        assert!(!run.failures.is_empty());
        assert!(run.failures.iter().all(|f| f.budget));
    }

    #[test]
    fn file_topology_redraws_weights() {
        let dir = std::env::temp_dir().join(format!("seqopt-sim-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("g.txt");
        std::fs::write(&path, "1 3 undirected\n0 1 5\n1 2 5\n").unwrap();
        let mut cfg = complete(3, 2);
        cfg.topology = Topology::File { path: path.clone() };
        let g = gen_graph(&cfg, 0).unwrap();
        assert_eq!(g.k(), 2);
        assert_eq!(g.arcs().len(), 4);
        let run = run_experiment(&cfg).unwrap();
        assert_eq!(run.records[0].series.len(), 2);
        std::fs::remove_dir_all(dir).unwrap();
    }
}
