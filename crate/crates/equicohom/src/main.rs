//! Command-line front end: load a problem bundle, run one pipeline, print
//! the report as JSON on stdout (and optionally to a file).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use equicohom::bundle;
use equicohom::cohomology::Flavor;
use equicohom::commands::{
    cmd_classify, cmd_cohomology, cmd_compare, cmd_homotopy, cmd_validate, HomotopyInput,
};
use equicohom::report::Report;
use equicohom::Error;

#[derive(Parser)]
#[command(
    name = "equicohom",
    about = "Exact equivariant simplicial cohomology with local coefficients, computed two ways and cross-verified",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem bundle (JSON).
    #[arg(long)]
    bundle: std::path::PathBuf,
    /// Write the JSON report here as well as to stdout.
    #[arg(long)]
    json_out: Option<std::path::PathBuf>,
    /// Re-truncate the bundle at this dimension.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Include wall-clock timing in the report (off by default so reports
    /// are byte-identical across runs).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Bredon,
    Twisted,
}

#[derive(Subcommand)]
enum Command {
    /// Check every structural invariant of a bundle.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Invariant factors of the equivariant cohomology in one flavor.
    Cohomology {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        /// Comma-separated degrees (defaults to the bundle's request).
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
    },
    /// Run both complexes and verify the comparison isomorphism degreewise.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        /// Random cochains per degree for the coboundary checks.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classification round-trips between cochains and lifts at one degree.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Vertical homotopies between cohomologous cocycles.
    Homotopy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: usize,
        /// Generate this many random cohomologous pairs.
        #[arg(long, default_value_t = 20, conflicts_with = "cochains")]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explicit cochain file with f0, f1 and optionally h.
        #[arg(long)]
        cochains: Option<std::path::PathBuf>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::Validation(_)
        | Error::IndexOutOfRange(_)
        | Error::DimensionMismatch(_)
        | Error::ComplexNotExact(_) => 1,
        Error::HypothesisViolation(_) | Error::PathMissing(_) | Error::NotCohomologous(_) => 2,
        Error::LiftInvariantViolation(_) | Error::Internal(_) => 3,
    }
}

fn load(common: &Common) -> Result<(bundle::CompiledBundle, String), Error> {
    let text = std::fs::read_to_string(&common.bundle)
        .map_err(|e| Error::Parse(format!("{}: {e}", common.bundle.display())))?;
    let spec = bundle::parse(&text)?;
    let compiled = bundle::compile(&spec, common.max_dim)?;
    Ok((compiled, common.bundle.display().to_string()))
}

fn emit(common: &Common, mut report: Report, elapsed: std::time::Duration) -> Result<(), Error> {
    if common.timing {
        report.timing_ms = Some(elapsed.as_millis());
    }
    let text = report.to_json();
    println!("{text}");
    if let Some(path) = &common.json_out {
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Internal(format!("writing {}: {e}", path.display())))?;
    }
    if report.status == "fail" {
        // Theorem-contradicting outcome: always a bug somewhere.
        return Err(Error::LiftInvariantViolation(
            "verdicts failed; see the report".to_string(),
        ));
    }
    Ok(())
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    match &cli.command {
        Command::Validate { common } => {
            let (compiled, name) = load(common)?;
            let report = cmd_validate(&compiled, &name);
            emit(common, report, started.elapsed())
        }
        Command::Cohomology {
            common,
            flavor,
            degrees,
        } => {
            let (compiled, name) = load(common)?;
            let flavor = match flavor {
                FlavorArg::Bredon => Flavor::Bredon,
                FlavorArg::Twisted => Flavor::Twisted,
            };
            let report = cmd_cohomology(&compiled, &name, flavor, degrees.clone())?;
            emit(common, report, started.elapsed())
        }
        Command::Compare {
            common,
            degrees,
            samples,
            seed,
        } => {
            let (compiled, name) = load(common)?;
            let report = cmd_compare(&compiled, &name, degrees.clone(), *samples, *seed)?;
            emit(common, report, started.elapsed())
        }
        Command::Classify {
            common,
            degree,
            samples,
            seed,
        } => {
            let (compiled, name) = load(common)?;
            let report = cmd_classify(&compiled, &name, *degree, *samples, *seed)?;
            emit(common, report, started.elapsed())
        }
        Command::Homotopy {
            common,
            degree,
            pairs,
            seed,
            cochains,
        } => {
            let (compiled, name) = load(common)?;
            let input = match cochains {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let spec: bundle::HomotopyInputSpec =
                        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                    HomotopyInput::Explicit(spec)
                }
                None => HomotopyInput::Generate {
                    pairs: *pairs,
                    seed: *seed,
                },
            };
            let report = cmd_homotopy(&compiled, &name, *degree, input)?;
            emit(common, report, started.elapsed())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("EQUICOHOM_LOG")).init();
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
