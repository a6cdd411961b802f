use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hoalg_cli::error::CliError;
use hoalg_cli::format::to_pretty_json;
use hoalg_cli::run::{self, Direction, JobConfig, ModuleChoice, Theory};
use serde::Serialize;

/// Homology and cohomology of small algebras with exact rational arithmetic.
///
/// Worker threads: set HOALG_THREADS (default: all cores).
/// Exit codes: 0 all checks pass, 2 validation failure, 3 invariant failure,
/// 4 I/O or parse error.
#[derive(Parser)]
#[command(name = "hoalg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a presentation (and optionally a module over it) against its axioms
    Validate {
        file: PathBuf,
        /// `regular`, `trivial` or a module file
        #[arg(long)]
        module: Option<String>,
    },
    /// Homology dimensions per weight
    Homology(ComplexArgs),
    /// Cohomology dimensions per weight
    Cohomology(ComplexArgs),
    /// Exactness of the Koszul resolution of a Lie algebra up to filtration p
    KoszulVerify {
        #[arg(long)]
        pmax: usize,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Structure laws and square-zero checks of the G∞ construction
    GinftyVerify {
        #[arg(long)]
        max_weight: usize,
        /// `regular` (default), `trivial` or a module file
        #[arg(long)]
        module: Option<String>,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in acceptance checks
    Selftest {
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ComplexArgs {
    #[arg(long, value_enum)]
    theory: Theory,
    #[arg(long)]
    max_weight: usize,
    /// `regular`, `trivial` or a module file; the default depends on the theory
    #[arg(long)]
    module: Option<String>,
    file: PathBuf,
    /// Write the JSON report here
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn write_report<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    if let Some(path) = path {
        std::fs::write(path, to_pretty_json(value)).map_err(|source| CliError::Io { path: path.into(), source })?;
    }
    Ok(())
}

fn verdict(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn complex(direction: Direction, args: ComplexArgs) -> Result<ExitCode, CliError> {
    let job = JobConfig {
        theory: args.theory,
        direction,
        max_weight: args.max_weight,
        input: args.file,
        module: args.module.as_deref().map(ModuleChoice::parse),
        width: run::width_from_env()?,
    };
    let report = run::run(&job)?;
    print!("{}", report.to_table());
    write_report(args.output.as_deref(), &report)?;
    Ok(verdict(report.passed))
}

fn main_inner(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Validate { file, module } => {
            let a = run::load_validated(&file)?;
            println!("valid {} presentation, dim {}", a.kind.name(), a.dim());
            if let Some(m) = module {
                let (m, label) = run::resolve_module(&a, &ModuleChoice::parse(&m))?;
                println!("valid module {label}, dim {}", m.dim());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology(args) => complex(Direction::Homology, args),
        Command::Cohomology(args) => complex(Direction::Cohomology, args),
        Command::KoszulVerify { pmax, file, output } => {
            let g = run::load_validated(&file)?;
            let report = run::koszul_report(&g, pmax, &file.display().to_string(), "verify", run::width_from_env()?)?;
            print!("{}", report.to_table());
            write_report(output.as_deref(), &report)?;
            Ok(verdict(report.passed))
        }
        Command::GinftyVerify { max_weight, module, file, output } => {
            let choice = module.as_deref().map(ModuleChoice::parse);
            let report = run::ginfty_verify(&file, choice.as_ref(), max_weight)?;
            print!("{}", report.to_table());
            write_report(output.as_deref(), &report)?;
            Ok(verdict(report.passed))
        }
        Command::Selftest { seed, output } => {
            let report = run::selftest(seed, run::width_from_env()?);
            print!("{}", report.to_table());
            write_report(output.as_deref(), &report)?;
            Ok(verdict(report.passed))
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
