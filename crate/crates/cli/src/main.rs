//! `phi4sw`: Galerkin tables, elliptic parameters, solution artifacts and
//! their verification for φ⁴ standing waves.
//!
//! Exit codes: 0 success, 1 solver failure (non-convergence, no admissible
//! root, other runtime errors), 2 configuration / input error, 3 bracket
//! failure, 4 resonance, 5 verification failure.

mod commands;
mod config;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use phi4_standing::galerkin::RootPick;
use phi4_standing::Error;

use commands::TableFormat;
use config::{FileConfig, Overrides, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "phi4sw", version, about = "Standing waves of the cubic wave equation")]
struct Cli {
    /// JSON config file; command-line flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Working precision in decimal digits (>= 20).
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// Galerkin truncation: number of odd modes (>= 2).
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Residual threshold for the Galerkin sweeps.
    #[arg(long, global = true)]
    delta: Option<String>,

    #[arg(long, global = true)]
    amplitude: Option<String>,

    #[arg(long, global = true)]
    epsilon: Option<String>,

    /// Output directory for artifacts.
    #[arg(long, global = true, env = "PHI4SW_OUT_DIR")]
    out: Option<PathBuf>,

    /// Root chosen when a cubic has several admissible roots.
    #[arg(long, global = true, value_parser = parse_root_pick)]
    root_pick: Option<RootPick>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the truncated resonance system and tabulate it next to the
    /// closed form.
    Galerkin,
    /// Solve the nome equation and print the elliptic parameters.
    SolveNome {
        /// Cut every series at this many terms instead of the
        /// precision-driven count.
        #[arg(long)]
        series_terms: Option<usize>,
    },
    /// Build φ₀ + εφ₁ + ε²φ₂ and write it to `solution.json`.
    Build {
        /// Also sample the field on an NXxNT grid into `field.csv`.
        #[arg(long, value_parser = commands::parse_grid)]
        field_grid: Option<(usize, usize)>,
    },
    /// Check a solution file: PDE residual scan, order-by-order equations
    /// and the elliptic identities.
    Verify {
        /// Defaults to `<out>/solution.json`.
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Print the comparison table to stdout.
    ExportTable {
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
}

fn parse_root_pick(s: &str) -> Result<RootPick, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<verify::VerifyFailed>().is_some() {
        return 5;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::NonConvergence { .. } | Error::NoQualifyingRoot { .. }) => 1,
        Some(Error::Bracket(_)) => 3,
        Some(Error::Resonance { .. }) => 4,
        Some(
            Error::Config(_)
            | Error::Parse(_)
            | Error::Json(_)
            | Error::Csv(_)
            | Error::Shape(_)
            | Error::Domain { .. }
            | Error::Normalization(_)
            | Error::NonFinite(_),
        ) => 2,
        Some(Error::Io(_)) | None => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = Overrides {
        precision_digits: cli.precision,
        n: cli.n,
        delta: cli.delta,
        amplitude: cli.amplitude,
        epsilon: cli.epsilon,
        output_dir: cli.out,
        root_pick: cli.root_pick,
    };
    let cfg = RunConfig::resolve(file, flags)?;
    match cli.command {
        Command::Galerkin => commands::galerkin(&cfg),
        Command::SolveNome { series_terms } => commands::solve_nome(&cfg, series_terms),
        Command::Build { field_grid } => commands::build(&cfg, field_grid),
        Command::Verify { solution } => {
            let path = solution.unwrap_or_else(|| cfg.output_dir.join(commands::SOLUTION_FILE));
            verify::verify(&path, &cfg.output_dir)
        }
        Command::ExportTable { format } => commands::export_table(&cfg, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
