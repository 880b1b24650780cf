//! `ksphere` — construct, verify and classify the unitary generators of
//! the K-theory of spheres with the antipodal involution.
//!
//! Exit codes: 0 success, 1 verification failure, 2 user/domain error,
//! 3 resource limit.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ksphere::clifford::PhaseConvention;

#[derive(Parser)]
#[command(name = "ksphere", version, about = "Exact generators and invariants for sphere K-theory with the antipodal involution", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseArg {
    /// An `i` on every product factor.
    PerFactor,
    /// A single leading `i`.
    Single,
}

impl From<PhaseArg> for PhaseConvention {
    fn from(p: PhaseArg) -> Self {
        match p {
            PhaseArg::PerFactor => PhaseConvention::PerFactorI,
            PhaseArg::Single => PhaseConvention::SingleI,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    #[value(alias = "Q")]
    Q,
    #[value(alias = "U")]
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum InvariantArg {
    Winding1,
    Chern2,
    Winding3,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    /// Multiply by W on the right (transpose picture -> sharp picture).
    ToSharp,
    /// Multiply by -W on the right (sharp picture -> transpose picture).
    ToTr,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the standard generator family for odd k as JSON.
    Gamma {
        #[arg(long)]
        k: u32,
    },
    /// Emit the symmetry-adapted generator family for odd k as JSON.
    Upsilon {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "per-factor")]
        phase: PhaseArg,
    },
    /// Run the full verification matrix for all odd k up to a bound, or
    /// verify a family document supplied with --input.
    Verify {
        #[arg(long, default_value_t = 13)]
        k_max: u32,
        /// Verify this family JSON instead of the built-in constructions.
        #[arg(long)]
        input: Option<std::path::PathBuf>,
        /// Seed for the sampled unitarity cross-checks.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Build one of the canonical pencils and write it as pencil JSON.
    BuildGenerator {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        which: WhichArg,
        /// Use the symmetry-adapted family.
        #[arg(long, conflicts_with = "complex")]
        real: bool,
        /// Use the standard complex family.
        #[arg(long)]
        complex: bool,
        #[arg(long, value_enum, default_value = "per-factor")]
        phase: PhaseArg,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Print every symmetry row a pencil satisfies, one per line.
    Classify {
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Pad a pencil with the neutral element of a row it satisfies.
    Stabilize {
        #[arg(long)]
        input: std::path::PathBuf,
        /// Row name, e.g. KO_4, KO_-1-alt.
        #[arg(long)]
        row: String,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Evaluate a numerical invariant of a pencil.
    Invariant {
        #[arg(long)]
        input: std::path::PathBuf,
        #[arg(long = "type", value_enum)]
        kind: InvariantArg,
        /// Per-angle resolution (type-specific default when omitted).
        #[arg(long)]
        grid: Option<usize>,
        /// Residual tolerance override; when given, exit 1 if exceeded.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Print K-groups of the d-sphere algebra.
    Groups {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Run every fixture check of the given sphere dimension (1..4).
    Tables {
        #[arg(long)]
        d: usize,
    },
    /// Convert a unitary (matrix or pencil JSON) between the
    /// transpose-based and sharp-based pictures.
    ConvertPicture {
        #[arg(long)]
        input: std::path::PathBuf,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            commands::exit_code_for(&err)
        }
    }
}
