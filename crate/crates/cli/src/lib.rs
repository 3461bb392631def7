//! Command-line front end: argument parsing, config files, and CSV/JSON
//! output for `dotent-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "dotent",
    version,
    about = "Driven Förster-coupled quantum dots: dynamics and entanglement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time series of populations and entanglement at one parameter point.
    Evolve(EvolveArgs),
    /// Observables over an (Ωt × parameter) grid, or a figure preset.
    Sweep(SweepArgs),
    /// Negativity and concurrence of a density matrix read from JSON.
    Entangle(EntangleArgs),
    /// Pure-dephasing rate from the phonon spectral integral.
    PhononRate(PhononArgs),
    /// List the figure presets.
    Presets,
}

/// Model parameters shared by `evolve` and `sweep`, in units of Ω.
#[derive(Debug, Args, Default)]
pub struct ModelArgs {
    /// Detuning Δ/Ω [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub delta_ratio: Option<f64>,
    /// Förster hopping η/Ω [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub eta_ratio: Option<f64>,
    /// Dephasing rate Γ/Ω [default: 0]
    #[arg(long)]
    pub gamma_ratio: Option<f64>,
    /// Laser phase φ in radians [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Final Ωt [default: 25]
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of time samples, both ends included [default: 501]
    #[arg(long)]
    pub steps: Option<usize>,
    /// `vacuum`, `single`, `biexciton`, or a path to a state JSON file [default: vacuum]
    #[arg(long)]
    pub initial: Option<String>,
    /// `auto`, `closed-form` or `lindblad`; auto picks closed-form when Γ = 0 and the initial state is pure [default: auto]
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// key=value file; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path, `-` for stdout [default: -]
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Figure preset: 1, 2, 3a, 3b, 4a or 4b
    #[arg(long)]
    pub figure: Option<String>,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Swept parameter: delta-ratio, eta-ratio, gamma-ratio or phi [default: delta-ratio]
    #[arg(long)]
    pub param: Option<String>,
    /// Lower end of the parameter axis [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub param_min: Option<f64>,
    /// Upper end of the parameter axis [default: 10]
    #[arg(long, allow_hyphen_values = true)]
    pub param_max: Option<f64>,
    /// Number of parameter points [default: 101]
    #[arg(long)]
    pub points: Option<usize>,
    /// Comma-separated subset of p0,p1,p2,negativity,concurrence [default: all]
    #[arg(long)]
    pub observables: Option<String>,
    /// key=value file; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path, `-` for stdout [default: -]
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct EntangleArgs {
    /// Density-matrix JSON file (dim 3 is embedded, dim 4 is used as is)
    #[arg(long)]
    pub rho: PathBuf,
}

#[derive(Debug, Args)]
pub struct PhononArgs {
    /// Spectral exponent n
    #[arg(long)]
    pub n: u32,
    /// Cutoff frequency ω_c
    #[arg(long, default_value_t = 1.0)]
    pub cutoff: f64,
    /// Temperature in frequency units (k_B T/ħ)
    #[arg(long, default_value_t = 0.0)]
    pub temperature: f64,
    /// Overall coupling prefactor
    #[arg(long, default_value_t = 1.0)]
    pub prefactor: f64,
}

/// Runs the parsed command, writing results to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Evolve(args) => commands::evolve::run(args, stdout),
        Command::Sweep(args) => commands::sweep::run(args, stdout),
        Command::Entangle(args) => commands::entangle::run(args, stdout),
        Command::PhononRate(args) => commands::phonon::run(args, stdout),
        Command::Presets => commands::presets::run(stdout),
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                error::EXIT_USAGE
            } else {
                0
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let _ = lock.flush();
            eprintln!("error: {err}");
            if let CliError::Core(core) = &err {
                if let dotent_core::Error::InvalidDensity(report) = core.root() {
                    eprintln!("diagnostics: {report}");
                }
            }
            ExitCode::from(err.exit_code())
        }
    }
}
