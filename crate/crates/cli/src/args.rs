use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mucheeger_core::enumeration::DEFAULT_CAP;
use mucheeger_core::solver::{Effort, SolverConfig};

#[derive(Debug, Parser)]
#[command(
    name = "mucheeger",
    version,
    about = "Conductance, mu-conductance and spectral bounds"
)]
pub struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "MUCHEEGER_THREADS")]
    pub threads: Option<usize>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        /// path, cycle, complete, barbell, lollipop or gnp.
        family: String,
        /// Family parameters, e.g. `barbell 3 3` or `gnp 10 0.5`.
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conductance of the graph.
    Phi {
        graph: PathBuf,
        #[command(flatten)]
        exact: ExactArgs,
    },
    /// mu-conductance: the best set with volume in [mu Vol, (1 - mu) Vol].
    Phimu {
        graph: PathBuf,
        #[arg(long)]
        mu: f64,
        #[command(flatten)]
        exact: ExactArgs,
    },
    /// Upper bound on the box-constrained spectral value for mu.
    Lambdamu {
        graph: PathBuf,
        #[arg(long)]
        mu: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check both sides of the mu-conductance Cheeger inequality.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        exact: ExactArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Tabulate mu-conductance and the bounds over a grid of mu values as CSV.
    Profile {
        graph: PathBuf,
        /// `start:stop:step`, endpoints included.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        exact: ExactArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ExactArgs {
    /// Use sweep cuts of the second eigenvector instead of enumeration.
    #[arg(long)]
    pub sweep: bool,
    /// Largest vertex count handled by enumeration (at most 30).
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EffortArg {
    Fast,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 8)]
    pub max_starts: usize,
    #[arg(long, default_value_t = 100)]
    pub iterations: usize,
    /// Feasibility tolerance for solver iterates.
    #[arg(long, default_value_t = 1e-9)]
    pub solver_tol: f64,
    #[arg(long, value_enum, default_value_t = EffortArg::Fast)]
    pub effort: EffortArg,
    /// Random window sets used as seeds on larger graphs.
    #[arg(long, default_value_t = 16)]
    pub random_sets: usize,
}

impl SolverArgs {
    pub fn config(&self, seed: u64) -> SolverConfig {
        SolverConfig {
            max_starts: self.max_starts,
            iteration_cap: self.iterations,
            tol: self.solver_tol,
            seed,
            effort: match self.effort {
                EffortArg::Fast => Effort::Fast,
                EffortArg::Exhaustive => Effort::ExhaustiveSigns,
            },
            random_sets: self.random_sets,
        }
    }
}
