use std::f64::consts::SQRT_2;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qubit_monogamy::monogamy::TheoremId;

#[derive(Debug, Parser)]
#[command(
    name = "monogamy",
    version,
    about = "Entanglement measures and monogamy checks for qubit states"
)]
pub struct Cli {
    /// Record the current time in output manifests (outputs then differ
    /// between runs).
    #[arg(long, global = true)]
    pub stamp: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate measures and monogamy checks on one state.
    Eval(EvalArgs),
    /// Run a seeded campaign over Haar-random states.
    Fuzz(FuzzArgs),
    /// Emit figure data as CSV.
    Figure(FigureArgs),
    /// Classify a three-qubit state from its residual concurrences.
    Classify(ClassifyArgs),
}

impl Command {
    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::Eval(a) if a.theorems_need_roof() => Some(a.roof_seed),
            Command::Fuzz(a) => Some(a.seed),
            _ => None,
        }
    }
}

/// One α value; accepts `sqrt2` for √2.
pub fn parse_alpha(s: &str) -> Result<f64, String> {
    match s.trim() {
        "sqrt2" | "√2" => Ok(SQRT_2),
        t => t
            .parse::<f64>()
            .ok()
            .filter(|a| a.is_finite())
            .ok_or_else(|| format!("`{t}` is not a finite number")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    Concurrence,
    Eof,
    Tangle,
    Coa,
}

/// Theorem selectors accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Ckw,
    #[value(alias = "dual")]
    DualCkw,
    T1,
    T2,
    T4,
    T5,
    /// Both bounds of the three-qubit EoF/EoA relation.
    T6,
}

impl TheoremArg {
    pub fn ids(self) -> &'static [TheoremId] {
        match self {
            TheoremArg::Ckw => &[TheoremId::Ckw],
            TheoremArg::DualCkw => &[TheoremId::DualCkw],
            TheoremArg::T1 => &[TheoremId::T1],
            TheoremArg::T2 => &[TheoremId::T2],
            TheoremArg::T4 => &[TheoremId::T4],
            TheoremArg::T5 => &[TheoremId::T5],
            TheoremArg::T6 => &[TheoremId::T6i, TheoremId::T6iSquared, TheoremId::T6ii],
        }
    }
}

pub fn expand(theorems: &[TheoremArg]) -> Vec<TheoremId> {
    let mut ids: Vec<TheoremId> = theorems
        .iter()
        .flat_map(|t| t.ids().iter().copied())
        .collect();
    ids.sort();
    ids.dedup();
    ids
}

#[derive(Debug, Args)]
pub struct RoofArgs {
    /// Restarts of the convex-roof search.
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// State file (JSON) or a named state: ghz3, w3, ghz_minus_w.
    pub state: String,

    /// Qubit playing the role of A.
    #[arg(long, default_value_t = 0)]
    pub focus: usize,

    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Measure::Concurrence, Measure::Eof, Measure::Tangle, Measure::Coa])]
    pub measures: Vec<Measure>,

    /// Checks to run; defaults to all that apply to the state.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub theorems: Option<Vec<TheoremArg>>,

    /// α grid replacing every theorem's default grid.
    #[arg(long, visible_alias = "alphas", value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_alpha)]
    pub alpha: Option<Vec<f64>>,

    /// Seed of the convex-roof search.
    #[arg(long = "seed", default_value_t = 0x5EED)]
    pub roof_seed: u64,

    #[command(flatten)]
    pub roof: RoofArgs,

    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl EvalArgs {
    pub fn theorems_need_roof(&self) -> bool {
        self.theorems
            .as_ref()
            .is_none_or(|t| t.contains(&TheoremArg::T5) || t.contains(&TheoremArg::T6))
    }
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=5))]
    pub qubits: u64,

    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [TheoremArg::Ckw, TheoremArg::DualCkw, TheoremArg::T1, TheoremArg::T2, TheoremArg::T4])]
    pub theorems: Vec<TheoremArg>,

    /// α grid replacing every theorem's default grid.
    #[arg(long, visible_alias = "alpha", value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_alpha)]
    pub alphas: Option<Vec<f64>>,

    #[arg(long, default_value_t = 0)]
    pub focus: usize,

    /// States with a pairwise concurrence at or below this skip the α ≤ 0 check.
    #[arg(long, default_value_t = 1e-3)]
    pub t2_min_concurrence: f64,

    #[command(flatten)]
    pub roof: RoofArgs,

    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    WResiduals,
    EoaBound,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, value_enum)]
    pub which: Figure,

    /// Defaults to 2 for w-residuals and √2 for eoa-bound.
    #[arg(long, value_parser = parse_alpha)]
    pub alpha_min: Option<f64>,

    /// Defaults to 6 for w-residuals and 4 for eoa-bound.
    #[arg(long, value_parser = parse_alpha)]
    pub alpha_max: Option<f64>,

    #[arg(long, default_value_t = 101)]
    pub points: usize,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Three-qubit state file (JSON) or a named state.
    pub state: String,

    #[arg(long, visible_alias = "alpha", value_delimiter = ',', value_parser = parse_alpha)]
    pub alpha_grid: Option<Vec<f64>>,

    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}
