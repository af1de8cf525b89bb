//! Command-line front end: reproduces the uncertainty/Fisher table, compares
//! the spectrum with an independent eigensolver and dumps density profiles.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod error;
pub mod render;

pub use commands::{cmd_fisher, cmd_profile, cmd_spectrum, cmd_table, FisherMethod};
pub use config::{Format, Overrides, RunConfig};
pub use error::CliError;
pub use render::Output;

#[derive(Debug, Parser)]
#[command(
    name = "pdm",
    version,
    about = "Bound states and information measures of the sech²-mass, csch²-potential system"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments, uncertainty products and Fisher information per (n, a).
    Table,
    /// Analytic energies against the finite-volume oracle.
    Spectrum,
    /// Sampled x, ψ(x), ρ(x) for plotting.
    Profile,
    /// Fisher information alone.
    Fisher {
        #[arg(long, value_enum, default_value = "quadrature")]
        method: FisherMethod,
    },
}

#[derive(Debug, Args)]
pub struct Flags {
    /// Dimensionless depth calV0 = 2 m0 V0 / a² (bound states need calV0 <= 1/4).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub v0: Option<f64>,
    /// Comma-separated values of a.
    #[arg(
        long = "a",
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    pub a: Option<Vec<f64>>,
    /// Comma-separated levels n.
    #[arg(long = "n", global = true, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub m0: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Relative tolerance (table: moment integrals; spectrum: Richardson error).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Fine oracle grid; the coarse grid has half as many cells.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Samples per profile.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// key=value file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            v0: self.v0,
            a: self.a.clone(),
            m0: self.m0,
            n: self.n.clone(),
            format: self.format,
            tol: self.tol,
            grid: self.grid,
            samples: self.samples,
        }
    }

    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                Some(Overrides::parse_file(&text)?)
            }
            None => None,
        };
        RunConfig::resolve(file.as_ref(), &self.overrides())
    }
}

/// Runs a parsed command line, returning the rendered text and the output
/// it came from.
pub fn run(cli: &Cli) -> Result<(String, Output), CliError> {
    let cfg = cli.flags.resolve()?;
    let out = match &cli.command {
        Command::Table => cmd_table(&cfg)?,
        Command::Spectrum => cmd_spectrum(&cfg)?,
        Command::Profile => cmd_profile(&cfg)?,
        Command::Fisher { method } => cmd_fisher(&cfg, *method)?,
    };
    Ok((out.render(cfg.format)?, out))
}
