use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dirac_loc::commands::{self, Outcome};
use dirac_loc::config::{parse_grid, parse_n_list, parse_tolerance, Overrides, RunConfig};
use dirac_loc::{Error, Result};

/// Localized positive-energy Dirac states: radial densities, moments,
/// free evolution and symmetry checks.
#[derive(Parser, Debug)]
#[command(name = "dirac-loc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Comma-separated sequence indices, e.g. 5,7,10.
    #[arg(long, global = true, value_name = "LIST")]
    n: Option<String>,
    /// Cartesian grid as points per axis and box length, e.g. 128,16.
    #[arg(long, global = true, value_name = "N,L")]
    grid: Option<String>,
    /// Override a named tolerance; repeatable.
    #[arg(long, global = true, value_name = "NAME=VAL")]
    tol: Vec<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Radial densities rho_n(r) and their summaries.
    Figure1,
    /// Run the numerical self-checks.
    Verify,
    /// Free evolution with causality diagnostics.
    Evolve,
    /// Convolution integrals R_n(p).
    Rn,
    /// Norm, mean position, spread and mean velocity.
    Moments,
    /// Overlaps between displaced states.
    Overlap,
}

fn load(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let overrides = Overrides {
        output_dir: cli.out.clone(),
        n: cli.n.as_deref().map(parse_n_list).transpose()?,
        grid: cli.grid.as_deref().map(parse_grid).transpose()?,
        tolerances: cli.tol.iter().map(|t| parse_tolerance(t)).collect::<Result<_>>()?,
    };
    config.apply(&overrides);
    config.validate()?;
    Ok(config)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let config = load(cli)?;
    match cli.command {
        Command::Figure1 => commands::figure1(&config),
        Command::Verify => commands::verify(&config).map(|(o, _)| o),
        Command::Evolve => commands::evolve(&config),
        Command::Rn => commands::rn(&config),
        Command::Moments => commands::moments_cmd(&config),
        Command::Overlap => commands::overlap_cmd(&config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !out.message.is_empty() {
                println!("{}", out.message);
            }
            for path in &out.written.0 {
                println!("wrote {}", path.display());
            }
            if out.failed {
                eprintln!("verification failed");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &Error) -> u8 {
    e.exit_code() as u8
}
