//! `kinclose`: run verification suites, closures, simulations and kernel
//! scaling fits. Exit codes: 0 success, 1 check or solver failure, 2 usage
//! or configuration error.

mod closure_cmd;
mod json;
mod scaling_cmd;
mod simulate_cmd;
mod verify_cmd;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "kinclose", version, about = "Kinetic-theory closure verification toolkit")]
struct Cli {
    /// Multiply every default tolerance by this factor.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
    /// Output directory for report and simulation files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the randomized property suites.
    #[arg(long, global = true, default_value_t = kinclose::verify::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Maxwellian,
    ChapmanEnskog,
    Thermo,
    Closure,
    Curtiss,
    Scaling,
    All,
}

impl Suite {
    fn names(self) -> Vec<&'static str> {
        match self {
            Suite::Maxwellian => vec!["maxwellian"],
            Suite::ChapmanEnskog => vec!["chapman-enskog"],
            Suite::Thermo => vec!["thermo"],
            Suite::Closure => vec!["closure"],
            Suite::Curtiss => vec!["curtiss"],
            Suite::Scaling => vec!["scaling"],
            Suite::All => kinclose::verify::SUITES.to_vec(),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Suite::All => "all",
            s => s.names()[0],
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a property suite and print a JSON report.
    Verify { suite: Suite },
    /// Run a BGK simulation from a TOML config; writes series.csv and summary.json.
    Simulate { config: PathBuf },
    /// Select fluxes for given affinities by entropy-production maximization.
    Closure(closure_cmd::ClosureArgs),
    /// Collision-frequency temperature exponent and transport exponent of a
    /// power-law kernel.
    Scaling {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        b_bar: f64,
    },
}

/// Error carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<kinclose::Error> for CliError {
    fn from(e: kinclose::Error) -> Self {
        use kinclose::Error as E;
        match e {
            E::Config(_) | E::InvalidArgument(_) | E::Io(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

/// Print `text` and, when an output directory is given, also write it there.
pub fn emit(out: Option<&Path>, file: &str, text: &str) -> Result<(), CliError> {
    print!("{text}");
    if let Some(dir) = out {
        write_file(dir, file, text)?;
    }
    Ok(())
}

pub fn write_file(dir: &Path, file: &str, text: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Failure(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(file);
    std::fs::write(&path, text).map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if !(cli.tolerance_scale > 0.0 && cli.tolerance_scale.is_finite()) {
        return Err(CliError::Usage(format!("--tolerance-scale must be positive, got {}", cli.tolerance_scale)));
    }
    let out = cli.out.as_deref();
    match cli.command {
        Command::Verify { suite } => verify_cmd::run(suite.label(), &suite.names(), cli.seed, cli.tolerance_scale, out),
        Command::Simulate { config } => simulate_cmd::run(&config, out),
        Command::Closure(args) => closure_cmd::run(&args, out),
        Command::Scaling { lambda, b_bar } => scaling_cmd::run(lambda, b_bar, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
