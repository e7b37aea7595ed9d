//! `bht`: file-based front end to `bht-core`.
//!
//! Exit codes: 0 on success, 1 on domain errors (including failed
//! verifications), 2 on unreadable or unparsable input.

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CliError;

/// Seed used by randomized subcommands when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "bht", version, about = "Exact computation in Brin-Higman-Thompson groups nV_{k,r}")]
pub struct Cli {
    /// Print `key=value` lines instead of human-readable text.
    #[arg(long, global = true)]
    pub porcelain: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Product `A ∘ B` (apply B first).
    Compose { a: PathBuf, b: PathBuf },
    /// Inverse of a table.
    Invert { a: PathBuf },
    /// Whether two tables define the same homeomorphism.
    Eq { a: PathBuf, b: PathBuf },
    /// Least m ≤ max with A^m = id.
    Order {
        a: PathBuf,
        #[arg(long, default_value_t = 64)]
        max: u64,
    },
    /// Closure of the support of a table, as a clopen.
    Support { a: PathBuf },
    /// Image of a rational point, e.g. `--point "root:0 1(0)"`.
    Apply {
        a: PathBuf,
        /// The point, or a file containing it.
        #[arg(long)]
        point: String,
    },
    /// Bisection with source A and range strictly inside B.
    Compress { a: PathBuf, b: PathBuf },
    /// Two bisections with source X and disjoint ranges inside X.
    Double { x: PathBuf },
    /// Bisection with source exactly A and range exactly B.
    Between { a: PathBuf, b: PathBuf },
    /// Order-3 element cycling X0 → X1 → X2 → X0.
    Multisection { x0: PathBuf, x1: PathBuf, x2: PathBuf },
    /// Element supported in X mapping Y1 into Y2.
    Vigor { x: PathBuf, y1: PathBuf, y2: PathBuf },
    /// Pairwise distinct conjugates of a non-identity element.
    Conjugates {
        g: PathBuf,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Witness for one compressibility condition at a rational point.
    Compressibility {
        #[arg(long)]
        point: String,
        /// 1: one table; 2: clopens U1 U2; 3: clopens U1 U2 U3.
        #[arg(long)]
        cond: u8,
        inputs: Vec<PathBuf>,
    },
    /// Embedding of Thompson's group V supported on a clopen.
    EmbedV {
        /// `n,k,r`; mixed alphabets as `n,k1:k2:...,r`.
        #[arg(long)]
        space: String,
        #[arg(long)]
        support: PathBuf,
        /// Optional tree pair to push through the embedding.
        v: Option<PathBuf>,
        /// Random vigor instances to check on the image.
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Groupoid homology H_i.
    Homology {
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: usize,
    },
    /// Abelianization of the full group.
    Abelianization {
        #[arg(long)]
        space: String,
    },
    /// Proper characters.
    Characters {
        #[arg(long)]
        space: String,
    },
    /// Whether the full group is perfect.
    Perfect {
        #[arg(long)]
        space: String,
    },
    /// Re-check the postconditions recorded in a witness file.
    Verify { witness: PathBuf },
    /// Random element of a space, as a table.
    Random {
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 3)]
        factors: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
