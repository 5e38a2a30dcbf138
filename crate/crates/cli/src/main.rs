//! `seqopt`: exact sequential optimization numbers, their verification
//! suites, the multi-criteria path solver and its simulation harness.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad arguments or malformed
//! input, 3 a budget was exhausted, 4 arity mismatch.

mod commands;
mod error;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seqopt::numbers::DEFAULT_COMBINATION_BUDGET;
use seqopt::oracle::DEFAULT_ENUM_BUDGET;

use crate::error::CliError;

#[derive(Parser)]
#[command(name = "seqopt", version, about = "Sequential optimization numbers and multi-criteria shortest paths")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel enumerations and solving.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct EnumBudget {
    /// Maximum number of permutation tuples an enumeration may visit.
    #[arg(long = "budget", env = "SEQOPT_ENUM_BUDGET", default_value_t = DEFAULT_ENUM_BUDGET)]
    enum_budget: u128,
}

#[derive(Args, Clone, Copy)]
struct CombinationBudget {
    /// Maximum number of terms in the combination sum.
    #[arg(long = "combination-budget", env = "SEQOPT_COMBINATION_BUDGET", default_value_t = DEFAULT_COMBINATION_BUDGET)]
    combination_budget: u128,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Tsv,
    Bfile,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    SingleDimension,
    MultiDimension,
    SqrtCoefficient,
}

#[derive(Clone, Copy, ValueEnum)]
enum BruteKind {
    /// Weights of k-tuples of permutations.
    SeqOpt,
    /// The same counts through color-board visibility.
    ColorBoards,
    /// Pareto minima of n points with k random coordinates.
    OptNumbers,
    /// Number of records of one permutation.
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    AtMost,
    Exactly,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    Complete,
    Gnp,
    Layered,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightsArg {
    Uniform,
    Permutation,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangle O_k(n, m) for 0 <= m <= n <= N.
    Table {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
        /// Restrict the default grids to this dimension.
        #[arg(long)]
        k: Option<u32>,
        /// Replace the default size limit (or size grid).
        #[arg(long)]
        n: Option<usize>,
        /// Run only these checks (comma separated); opt-in checks must be named.
        #[arg(long, value_delimiter = ',')]
        which: Vec<String>,
        #[command(flatten)]
        enum_budget: EnumBudget,
        #[command(flatten)]
        combination_budget: CombinationBudget,
    },
    /// Decide a bounded multi-criteria path query and print a witness.
    Solve {
        /// Graph file (text or JSON).
        #[arg(long)]
        graph: PathBuf,
        /// `s t b1 .. bk`.
        #[arg(long)]
        query: String,
        #[arg(long, value_enum, default_value = "at-most")]
        variant: VariantArg,
        /// Also print the full front at s.
        #[arg(long)]
        frontier: bool,
        /// Abort when any front exceeds this size.
        #[arg(long)]
        max_front: Option<usize>,
    },
    /// Run a seeded front-growth experiment; writes a CSV and a report.
    Simulate(SimulateArgs),
    /// Combination-sum value of O_k(n, m).
    Explicit {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        budget: CombinationBudget,
    },
    /// Coefficients of the generating polynomial, by ascending power.
    Poly {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        /// Falling form: coefficients (-1)^(n+m) O_k(n, m).
        #[arg(long)]
        signed: bool,
    },
    /// Evaluate the generating polynomials at their roots.
    Roots {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        /// Judge by the closed-form root list instead of the linear-factor roots.
        #[arg(long)]
        stated: bool,
    },
    /// Generalized harmonic number H_i(n) = sum 1/j^i.
    Harmonic {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        n: u64,
    },
    /// Exact upper bound on O_k(n, m); the whole row when --m is absent.
    Bound {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Concentration threshold ceil(base) + m1.
    Threshold {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m1: u64,
        /// Defaults to single-dimension for k = 1, multi-dimension otherwise.
        #[arg(long, value_enum)]
        form: Option<FormArg>,
    },
    /// Tail mass beyond the threshold against e^(-m1).
    Tail {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m1: u64,
    },
    /// Normalized bound mass against its closed-form limit.
    Ratio {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        /// Check successive bound ratios beyond the threshold instead.
        #[arg(long)]
        successive: bool,
    },
    /// Tilted-distribution tail against e^(-m1r).
    BadCase {
        #[arg(long)]
        eta: u64,
        /// Tilt, as an integer, fraction or decimal (> 1).
        #[arg(long)]
        mu: String,
        #[arg(long)]
        m1r: u64,
    },
    /// Count distributions by exhaustive enumeration.
    Brute {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "seq-opt")]
        kind: BruteKind,
        /// Report enumeration progress on stderr.
        #[arg(long)]
        progress: bool,
        #[command(flatten)]
        budget: EnumBudget,
    },
    /// Pareto front of all simple s-t paths by exhaustive search.
    Paths {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Largest node count accepted.
        #[arg(long, default_value_t = seqopt::cspath::DEFAULT_BRUTE_LIMIT)]
        limit: usize,
    },
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON experiment configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    topology: Option<TopologyArg>,
    /// Arc probability for the gnp topology.
    #[arg(long)]
    p: Option<f64>,
    /// Block width for the layered topology.
    #[arg(long)]
    width: Option<usize>,
    /// Graph file for the file topology.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    weights: Option<WeightsArg>,
    #[arg(long)]
    lo: Option<u64>,
    #[arg(long)]
    hi: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    m3: Option<u64>,
    #[arg(long)]
    fit_degree: Option<u32>,
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long)]
    max_front: Option<usize>,
    /// CSV output path.
    #[arg(long, default_value = "simulation.csv")]
    out: PathBuf,
    /// Report path prefix; `.txt` and `.json` are appended.
    #[arg(long, default_value = "simulation_report")]
    report: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.into()).build_global() {
        eprintln!("seqopt: thread pool: {e}");
        return ExitCode::from(error::EXIT_INPUT);
    }
    match commands::dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::CheckFailed) {
                eprintln!("seqopt: {e}");
            }
            e.exit_code()
        }
    }
}
