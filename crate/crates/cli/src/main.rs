//! `catlab` command-line front end.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use catlab::catalysis::DEFAULT_DIM_CAP;
use catlab::Error;

/// Catalytic entanglement laboratory.
///
/// States are JSON state files or the built-in names bell, ghz, w, jp-psi,
/// jp-phi, and random:<d1>x<d2>[x<d3>...] (seeded by --seed).
#[derive(Parser, Debug)]
#[command(name = "catlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for `random:` states.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the command's structured result to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropies, Schmidt spectrum and purity of a state.
    Analyze {
        /// State to analyze (pure or mixed).
        state: String,
        /// Comma-separated labels on the left of the bipartition.
        #[arg(long, value_delimiter = ',')]
        cut: Vec<String>,
    },
    /// Single-copy LOCC convertibility of two pure states.
    Convert {
        /// Initial pure state.
        psi: String,
        /// Target pure state.
        phi: String,
        /// Comma-separated labels on one side (default: Alice's subsystems, else the first).
        #[arg(long, value_delimiter = ',')]
        cut: Vec<String>,
    },
    /// Grid search for a catalyst spectrum enabling `psi → phi`.
    FindCatalyst {
        /// Initial pure state.
        psi: String,
        /// Target pure state.
        phi: String,
        /// Comma-separated labels on one side (default: Alice's subsystems, else the first).
        #[arg(long, value_delimiter = ',')]
        cut: Vec<String>,
        /// Schmidt rank of the catalyst.
        #[arg(long, default_value_t = 2)]
        catalyst_dim: usize,
        /// Grid resolution: coordinates are multiples of 1/grid-steps.
        #[arg(long, default_value_t = 100)]
        grid_steps: usize,
    },
    /// One run of the catalytic protocol with a synthetic Γ.
    Simulate {
        /// Input state ρ on S.
        rho: String,
        /// Pure target φ on S.
        phi: String,
        /// Number of copies in Γ.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Accuracy D(Γ, φ^n) of the synthetic Γ.
        #[arg(long, default_value_t = 1e-4)]
        epsilon: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Protocol runs over a list of `n` or `ε` values, as a CSV table.
    Sweep {
        /// Input state ρ on S.
        rho: String,
        /// Pure target φ on S.
        phi: String,
        /// Comma-separated copy counts.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        n: Vec<usize>,
        /// Comma-separated accuracies.
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001")]
        epsilon: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// State-merging resource ledger of a pure tripartite state R, A, B.
    MergeLedger {
        /// Pure state on R, A, B (party tags, or position order).
        state: String,
    },
    /// Assisted-distillation ledger of a pure tripartite state A, B, C.
    DistillLedger {
        /// Pure state on A, B, C (party tags, or position order).
        state: String,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Largest allowed dimension of S^n ⊗ K.
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: usize,
    /// Noise mixed into the synthetic Γ.
    #[arg(long, value_enum, default_value_t = NoiseKind::MaximallyMixed)]
    noise: NoiseKind,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NoiseKind {
    /// The maximally mixed state on S^n.
    MaximallyMixed,
    /// Copies of the input state ρ.
    Input,
}

/// Outcome of a command that completed without an input or resource error.
pub enum Verdict {
    Done,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli);
    match result {
        Ok(Verdict::Done) => ExitCode::SUCCESS,
        Ok(Verdict::Failed) => ExitCode::from(1),
        Err(e @ Error::ResourceCap { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
