use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tetrad_em_cli::report::Which;
use tetrad_em_cli::{check, integrate, report, verify, CliError, Outcome, Scenario};

#[derive(Parser)]
#[command(name = "tetrad-em", version, about = "Energy-momentum of tetrad fields in the spacetime algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity checks at every grid point and print the residual table.
    Check { file: PathBuf },
    /// Write one CSV row of components per grid point.
    Report {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "grav")]
        which: Vec<Which>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Energy and momentum over the scenario's integration region, as JSON.
    Integrate { file: PathBuf },
    /// Check the Schwarzschild closed forms, energy and momentum.
    VerifySchwarzschild {
        #[arg(long, allow_negative_numbers = true)]
        mass: f64,
        #[arg(long, allow_negative_numbers = true)]
        radius: f64,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Check { file } => check::check(&Scenario::load(&file)?.compile()?),
        Command::Report { file, which, out } => {
            let outcome = report::report(&Scenario::load(&file)?.compile()?, &which)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &outcome.output)?;
                    Ok(Outcome { output: String::new(), ..outcome })
                }
                None => Ok(outcome),
            }
        }
        Command::Integrate { file } => integrate(&Scenario::load(&file)?.compile()?),
        Command::VerifySchwarzschild { mass, radius } => verify::verify(mass, radius),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
