//! `qmarket`: simulations of the finite quantum stock-market model.

mod commands;
mod config;
mod error;
mod format;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::{OperatorName, SpectrumParams};
use crate::config::PartialConfig;
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "qmarket",
    version,
    about = "Finite-dimensional quantum model of a price-limited stock market"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the equilibrium Gaussian under the cosine-information Hamiltonian.
    Simulate(SimulateArgs),
    /// Tabulate the finite Gaussian g_alpha and its normalization.
    Gaussian(GaussianArgs),
    /// Print an operator matrix as CSV `n,m,re,im`.
    Spectrum(SpectrumArgs),
    /// Measure the Fourier self-duality of the finite Gaussians.
    CheckRuzzi(RuzziArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON file with any RunConfig fields; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Price limit in percent; the lattice has 2q+1 returns [default: 10].
    #[arg(long)]
    q: Option<i64>,
    /// Width of the equilibrium Gaussian [default: 0.2].
    #[arg(long)]
    alpha: Option<f64>,
    /// Inertia of the kinetic term [default: 1].
    #[arg(long)]
    mu: Option<f64>,
    /// Amplitude of the periodic information potential [default: 0.1].
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Angular frequency of the information potential [default: 1e-4].
    #[arg(long)]
    omega: Option<f64>,
    /// Integrator step in seconds [default: 1].
    #[arg(long)]
    dt: Option<f64>,
    /// Comma-separated sample times in seconds, each a multiple of dt.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    times: Option<Vec<f64>>,
    /// unitary-midpoint or rk4.
    #[arg(long)]
    method: Option<String>,
    /// Previous close; fills the expected_price column.
    #[arg(long, alias = "p0")]
    price_base: Option<f64>,
    /// Directory for trajectory.csv, summary.csv and run.json [default: qmarket-out].
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Also write one SVG bar chart per sample time.
    #[arg(long, alias = "emit-svg")]
    svg: bool,
}

#[derive(Args)]
struct GaussianArgs {
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    q: i64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write an SVG chart next to the CSV.
    #[arg(long)]
    svg: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(value_enum)]
    operator: OperatorName,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    q: i64,
    #[arg(long, alias = "p0", allow_hyphen_values = true)]
    price_base: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RuzziArgs {
    /// One or more comma-separated widths.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.2,0.5,1,2,5",
        allow_hyphen_values = true
    )]
    alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "10", allow_hyphen_values = true)]
    q: Vec<i64>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => {
            let file = match &a.config {
                Some(path) => PartialConfig::from_file(path)?,
                None => PartialConfig::default(),
            };
            let flags = PartialConfig {
                q: a.q,
                alpha: a.alpha,
                mu: a.mu,
                beta: a.beta,
                omega: a.omega,
                dt: a.dt,
                times: a.times,
                price_base: a.price_base,
                method: a.method,
                output_dir: a.output_dir,
                emit_svg: a.svg.then_some(true),
            };
            commands::simulate(&file.overlay(flags).resolve()?)
        }
        Command::Gaussian(a) => commands::gaussian(a.q, a.alpha, a.output.as_deref(), a.svg),
        Command::Spectrum(a) => {
            let params = SpectrumParams {
                price_base: a.price_base,
                mu: a.mu,
                beta: a.beta,
                omega: a.omega,
                t: a.t,
            };
            commands::spectrum(a.q, a.operator, &params, a.output.as_ref())
        }
        Command::CheckRuzzi(a) => commands::ruzzi(&a.alpha, &a.q),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
