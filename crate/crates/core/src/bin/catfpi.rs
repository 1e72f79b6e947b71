use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use catfpi::harness::{emit, run, to_csv, to_json, ExperimentConfig, Format, KeyValueConfig, Report};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "catfpi", version, about = "Run path-integral experiments and report pass/fail verdicts")]
struct Cli {
    /// Key/value parameter file with optional [tolerances] overrides.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory for report files; without it the report goes to stdout.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Tamed delta sifting, convergence and domain checks.
    Delta,
    /// Modified conjugation algebra and sandwich identities.
    Conjugate,
    /// Truncated commutator and the non-hermitian position/momentum basis.
    Fock,
    /// The xi basis: annihilators, normalisation and biorthogonality.
    Xi,
    /// Localisation of the xi-space filter around the target point.
    XiFilter,
    /// One-step propagation and the effective Hamiltonian.
    Propagate,
    /// Momentum integral, its saddle point and the Lagrangian round trip.
    PIntegral,
    /// Position saddle point and momentum consistency.
    SaddleQ,
    /// Every experiment in one merged report.
    All,
}

impl Command {
    fn experiments(self) -> &'static [&'static str] {
        match self {
            Command::Delta => &["delta", "delta-domain"],
            Command::Conjugate => &["conjugate"],
            Command::Fock => &["commutator", "fock"],
            Command::Xi => &["xi"],
            Command::XiFilter => &["xi-filter"],
            Command::Propagate => &["propagate"],
            Command::PIntegral => &["p-integral"],
            Command::SaddleQ => &["saddle-q"],
            Command::All => &["all"],
        }
    }
}

fn execute(cli: &Cli) -> catfpi::Result<bool> {
    let format = Format::parse(&cli.format)?;
    let params = match &cli.config {
        Some(p) => KeyValueConfig::load(p)?,
        None => KeyValueConfig::default(),
    };
    let mut passed = true;
    for name in cli.command.experiments() {
        let report: Report = run(&ExperimentConfig::from_params(name, params.clone())?)?;
        passed &= report.passed();
        for v in report.failures() {
            eprintln!("FAIL {}: {}", report.experiment, v.name);
        }
        match &cli.out {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                for path in emit(&report, format, dir)? {
                    eprintln!("wrote {}", path.display());
                }
            }
            None => {
                let text = match format {
                    Format::Json => to_json(&report) + "\n",
                    Format::Csv => to_csv(&report)?,
                };
                std::io::stdout().lock().write_all(text.as_bytes())?;
            }
        }
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // A closed pipe (`catfpi all | head`) is not worth a message.
        Err(catfpi::Error::Io(e)) if e.kind() == ErrorKind::BrokenPipe => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
