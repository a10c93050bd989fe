//! Command-line front end: job parsing, pipeline stages, bundled examples.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hopfquiver_cli::job::{parse_intertwiners, parse_job, resolve, JobError};
use hopfquiver_cli::pipeline::{self, run_stage, Format, Overrides, Stage};
use hopfquiver_cli::registry;

#[derive(Parser)]
#[command(
    name = "hopfquiver",
    about = "Exact quiver presentations of smash products of Hopf actions on superpotential algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Maximum degree for graded-dimension computations
    #[arg(long)]
    dmax: Option<usize>,
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "dot", "records"])]
    format: String,
    /// TOML file with per-arrow φ/ξ intertwiner overrides
    #[arg(long)]
    intertwiners: Option<PathBuf>,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct JobArgs {
    /// Path to a .job file
    job: PathBuf,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Subcommand)]
enum Command {
    /// Check every Hopf axiom and action hypothesis, reporting each
    Validate(JobArgs),
    /// The homological determinant character of the action
    Hdet(JobArgs),
    /// The McKay quiver and inner-faithfulness
    Mckay(JobArgs),
    /// The quiver superpotential Φ, the relations of Λ, and recognition
    Lambda(JobArgs),
    /// Graded dimensions of Λ and Λ/⟨e₀⟩
    Hilbert(JobArgs),
    /// The Auslander-map verdict from the growth of Λ/⟨e₀⟩
    Auslander(JobArgs),
    /// Dimension vectors of the MCM modules e₀Λe_i
    Mcm(JobArgs),
    /// Run a bundled example
    Example {
        /// Example name (see --list)
        name: Option<String>,
        /// Pipeline stage to run
        #[arg(long, default_value = "lambda")]
        stage: String,
        /// List bundled example names
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn read_format(s: &str) -> Format {
    match s {
        "dot" => Format::Dot,
        "records" => Format::Records,
        _ => Format::Text,
    }
}

fn run(job_text: &str, stage: Stage, common: &CommonOpts) -> Result<pipeline::StageOutput, JobError> {
    let spec = parse_job(job_text)?;
    let resolved = resolve(&spec)?;
    let mut overrides = Overrides { dmax: common.dmax, ..Overrides::default() };
    if let Some(path) = &common.intertwiners {
        let text = std::fs::read_to_string(path)
            .map_err(|e| JobError::Input(format!("cannot read {}: {e}", path.display())))?;
        let (phi, xi) = parse_intertwiners(&text, &resolved.ctx)?;
        overrides.phi = phi;
        overrides.xi = xi;
    }
    run_stage(&resolved, stage, &overrides, read_format(&common.format))
}

fn emit(output: &str, common: &CommonOpts) -> Result<(), JobError> {
    match &common.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| JobError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, JobError> {
    let (job_text, stage, common): (String, Stage, CommonOpts) = match cli.command {
        Command::Validate(a) => (read_job(&a.job)?, Stage::Validate, a.common),
        Command::Hdet(a) => (read_job(&a.job)?, Stage::Hdet, a.common),
        Command::Mckay(a) => (read_job(&a.job)?, Stage::Mckay, a.common),
        Command::Lambda(a) => (read_job(&a.job)?, Stage::Lambda, a.common),
        Command::Hilbert(a) => (read_job(&a.job)?, Stage::Hilbert, a.common),
        Command::Auslander(a) => (read_job(&a.job)?, Stage::Auslander, a.common),
        Command::Mcm(a) => (read_job(&a.job)?, Stage::Mcm, a.common),
        Command::Example { name, stage, list, common } => {
            if list {
                let mut s = String::new();
                for e in registry::EXAMPLES {
                    s.push_str(e.name);
                    s.push('\n');
                }
                emit(&s, &common)?;
                return Ok(ExitCode::SUCCESS);
            }
            let name = name.ok_or_else(|| {
                JobError::Input("example needs a name (or --list)".into())
            })?;
            let example = registry::find(&name).ok_or_else(|| {
                JobError::Input(format!(
                    "unknown example {name:?}; run `hopfquiver example --list`"
                ))
            })?;
            let stage = Stage::parse(&stage)
                .ok_or_else(|| JobError::Input(format!("unknown stage {stage:?}")))?;
            (example.text.to_string(), stage, common)
        }
    };
    let output = run(&job_text, stage, &common)?;
    emit(&output.text, &common)?;
    if output.hypothesis_failed {
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn read_job(path: &PathBuf) -> Result<String, JobError> {
    std::fs::read_to_string(path)
        .map_err(|e| JobError::Input(format!("cannot read {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            match e {
                JobError::Input(_) => ExitCode::from(1),
                JobError::Hypothesis(_) => ExitCode::from(2),
            }
        }
    }
}
