//! `troprbm`: command-line access to the tropical RBM library.
//!
//! Exit codes: 0 success, 2 invalid input or usage, 1 internal failure.

mod commands;
mod input;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Invalid(m) => write!(f, "invalid input: {m}"),
            Self::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "troprbm", version, about = "Exact tropical and algebraic geometry of restricted Boltzmann machines")]
pub struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel operations (output does not depend on it).
    #[arg(long, global = true, env = "TROPRBM_THREADS")]
    pub threads: Option<usize>,
    /// Permit long-running modes (n = 5 slicing census, large exhaustive searches).
    #[arg(long, global = true)]
    pub allow_long: bool,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Slicings of the n-cube (linear threshold functions).
    Slicings {
        #[arg(long)]
        n: usize,
        /// Print only the number of slicings.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value_t = Strategy::Arrangement)]
        strategy: Strategy,
    },
    /// Facets of the zonotope generated by the (1, v).
    ZonotopeFacets {
        #[arg(long)]
        n: usize,
    },
    /// Evaluate the tropical morphism.
    Phi(ParamsSource),
    /// The inference function v -> argmax_h.
    Infer(ParamsSource),
    /// Dimension of the tropical RBM model via slicing-matrix ranks.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = DimStrategy::Code)]
        strategy: DimStrategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Membership of a tropical point in the first tropical RBM model.
    MemberTm1 {
        /// Tropical point file: 2^n rationals, one per line.
        #[arg(long)]
        point: PathBuf,
    },
    /// Binary codes and coding bounds.
    #[command(subcommand)]
    Codes(CodesCommand),
    /// Probability-side computations.
    #[command(subcommand)]
    Rbm(RbmCommand),
    /// Polynomials, initial forms and the prevariety witness.
    #[command(subcommand)]
    Tropvar(TropvarCommand),
    /// Secondary fan of the 3-cube and the TM1_3 subcomplex.
    #[command(subcommand)]
    Fan(FanCommand),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Arrangement,
    BruteForce,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimStrategy {
    Exhaustive,
    Greedy,
    Code,
}

#[derive(Args, Debug)]
pub struct ParamsSource {
    /// JSON file {"W": [[..]], "b": [..], "c": [..]} with rationals as strings.
    #[arg(long, conflicts_with = "random")]
    pub params: Option<PathBuf>,
    /// Draw seeded random rational parameters instead.
    #[arg(long, requires_all = ["n", "k"])]
    pub random: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum CodesCommand {
    /// The Hamming code of length 2^l - 1, in code file format.
    Hamming {
        #[arg(long)]
        l: u32,
    },
    /// Closed-form bounds and stored special values for word length n.
    Bounds {
        #[arg(long)]
        n: u64,
    },
    /// A2(n,3) for n <= 5 and K2(n,1) for n <= 4 by exhaustive search.
    Exact,
    /// Size, minimum distance and covering radius of a code file.
    Analyze {
        #[arg(long)]
        code: PathBuf,
    },
    /// Radius-1 Hamming balls around the codewords, as slicings.
    Slicings {
        #[arg(long)]
        code: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct ExpSource {
    /// JSON file {"beta": [..], "gamma": [..], "omega": [[..]]}.
    #[arg(long, conflicts_with = "random")]
    pub params: Option<PathBuf>,
    #[arg(long, requires_all = ["n", "k"])]
    pub random: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct MixtureSource {
    /// JSON file {"lambda": "..", "delta": [..], "epsilon": [..]}.
    #[arg(long, conflicts_with = "random")]
    pub params: Option<PathBuf>,
    #[arg(long, requires = "n")]
    pub random: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum RbmCommand {
    /// RBM distribution from exponential parameters.
    Joint(ExpSource),
    /// Two-component product mixture.
    Mixture(MixtureSource),
    /// Normalized componentwise product of two distributions.
    Hadamard {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Largest flattening rank, or the rank for one split.
    FlattenRank {
        #[arg(long)]
        p: PathBuf,
        /// Row side of the split, e.g. "1,2".
        #[arg(long)]
        split: Option<String>,
    },
    /// Covariance matrix of the coordinates.
    Covariance {
        #[arg(long)]
        p: PathBuf,
    },
    /// Necessary conditions for membership in the first RBM model.
    Check {
        #[arg(long)]
        p: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum TropvarCommand {
    /// 3x3 minors of the flattenings.
    Minors {
        #[arg(long)]
        n: usize,
        /// Row side of one split; all splits when omitted.
        #[arg(long)]
        split: Option<String>,
    },
    /// Initial form of a polynomial file at a weight vector.
    InitialForm {
        #[arg(long)]
        poly: PathBuf,
        /// Weight vector in tropical point format.
        #[arg(long)]
        weights: PathBuf,
    },
    /// Prevariety/variety separation at the 2x2x2x2 witness point.
    #[command(name = "witness-2222")]
    Witness2222 {
        /// Replace the stored witness point.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FanCommand {
    /// Triangulations of the 3-cube.
    Triangulations {
        #[arg(long)]
        count: bool,
    },
    /// f-vector of the secondary sphere.
    SphereFvector,
    /// The TM1_3 subcomplex of the secondary sphere.
    Tm13 {
        /// Print only the f-vector.
        #[arg(long)]
        fvector: bool,
    },
    /// Reduced homology ranks (of TM1_3 unless a complex file is given).
    Homology {
        /// JSON {"faces_by_dim": [[[..]]], ...} as exported by `fan tm13 --json`.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("invalid input: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("internal error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = std::panic::catch_unwind(|| commands::run(&cli));
    let output = match result {
        Ok(Ok(out)) => out,
        Ok(Err(CliError::Invalid(m))) => {
            eprintln!("invalid input: {m}");
            return ExitCode::from(2);
        }
        Ok(Err(CliError::Internal(m))) => {
            eprintln!("internal error: {m}");
            return ExitCode::from(1);
        }
        Err(_) => return ExitCode::from(1),
    };
    let text = if cli.json {
        serde_json::to_string_pretty(&output.json).expect("serializable") + "\n"
    } else {
        output.text
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("invalid input: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
