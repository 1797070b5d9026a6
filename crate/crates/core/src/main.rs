use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use thermoshift::cli::{exit_code, run};
use thermoshift::config::{Command, ExperimentConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Pressure,
    Curve,
    Gibbs,
    Approx,
    Zerotemp,
    Certify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Pressure => Command::Pressure,
            Cmd::Curve => Command::Curve,
            Cmd::Gibbs => Command::Gibbs,
            Cmd::Approx => Command::Approx,
            Cmd::Zerotemp => Command::Zerotemp,
            Cmd::Certify => Command::Certify,
        }
    }
}

/// Thermodynamic formalism for almost-additive potentials on Markov shifts.
#[derive(Debug, Parser)]
#[command(name = "thermoshift", version)]
struct Args {
    command: Cmd,
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Directory for reports (created if missing).
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = ExperimentConfig::load(&args.config).and_then(|c| run(args.command.into(), &c, &args.out));
    match &result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
        }
        Err(e) => eprintln!("thermoshift {}: {e}", Command::from(args.command).name()),
    }
    ExitCode::from(exit_code(&result) as u8)
}
