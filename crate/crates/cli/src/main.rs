//! `symlag`: symmetry screening and exact unisolvence checks for symmetric
//! Lagrange interpolation problems.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use symlag_core::EnumLimit;

#[derive(Debug, Parser)]
#[command(name = "symlag", version, about = "Symmetric node sets and unisolvence under S_n")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Largest n for which S_n is enumerated element by element.
    #[arg(long, global = true, env = "SYMLAG_ENUM_LIMIT", value_parser = clap::value_parser!(u32).range(1..))]
    pub enum_limit: Option<u32>,
    /// Snap decimal coordinates to the simplest rational within this distance.
    #[arg(long, global = true, value_parser = positive_f64)]
    pub snap_tol: Option<f64>,
    /// Relative threshold for the floating-point determinant.
    #[arg(long, global = true, value_parser = positive_f64)]
    pub det_tol: Option<f64>,
}

impl Config {
    pub fn limit(&self) -> EnumLimit {
        self.enum_limit.map(|l| EnumLimit(l as usize)).unwrap_or_default()
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be a positive number, got {s}"))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the orbit types of R^n in descending order.
    Types {
        #[arg(long)]
        n: usize,
    },
    /// Print the Gram matrix V of permutation characters.
    Vmatrix {
        #[arg(long)]
        n: usize,
    },
    /// Print the fixed-point matrix K and the conjugacy class sizes.
    Kmatrix {
        #[arg(long)]
        n: usize,
    },
    /// Screen a basis and node set, then test unisolvence.
    Analyze {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        nodes: PathBuf,
        /// Dimension, when the basis file does not state it.
        #[arg(long)]
        n: Option<usize>,
        /// Use the floating-point determinant instead of exact arithmetic.
        #[arg(long)]
        float: bool,
        /// Also certify linear independence of the basis by randomized exact rank.
        #[arg(long)]
        check_independence: bool,
    },
    /// Solve V X = r for the orbit vector a unisolvent node set must have.
    Solve {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Decide whether two node sets carry equivalent S_n-actions.
    Equiv {
        /// Exactly two node files.
        #[arg(long, num_args = 1, required = true)]
        nodes: Vec<PathBuf>,
    },
    /// Orbit type of a point, or orbit decomposition of a node set.
    Classify {
        #[arg(long, conflicts_with = "point", required_unless_present = "point")]
        nodes: Option<PathBuf>,
        /// Comma-separated coordinates, e.g. "1,1/2,1".
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.config;
    let result = match &cli.command {
        Command::Types { n } => commands::types(*n),
        Command::Vmatrix { n } => commands::vmatrix(*n),
        Command::Kmatrix { n } => commands::kmatrix(*n),
        Command::Analyze {
            basis,
            nodes,
            n,
            float,
            check_independence,
        } => commands::analyze(cfg, basis, nodes, *n, *float, *check_independence),
        Command::Solve { basis, n } => commands::solve(cfg, basis, *n),
        Command::Equiv { nodes } => commands::equiv(cfg, nodes),
        Command::Classify { nodes, point } => commands::classify(cfg, nodes.as_deref(), point.as_deref()),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
