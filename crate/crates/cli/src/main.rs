use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use golodlab_cli::{parse_problem, run_command, run_corpus, Command, Report, RunError, RunOptions};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Resolve,
    Koszul,
    GolodCertify,
    Poincare,
    Corpus,
}

/// Minimal resolutions, Koszul homology and Golod certificates.
#[derive(Debug, Parser)]
#[command(name = "golodlab", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Problem file, or a directory of `.golod` files for `corpus`.
    spec: PathBuf,
    /// Series truncation order; overrides `truncate:` in the file.
    #[arg(long)]
    truncate: Option<usize>,
    /// Write the JSON report here and print a summary instead.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check that Koszul homology vanishes outside the Betti degrees.
    #[arg(long)]
    full_degree_scan: bool,
}

fn run(args: &Args) -> Result<Report, RunError> {
    let options = RunOptions {
        truncate: args.truncate,
        full_degree_scan: args.full_degree_scan,
        step_budget: None,
    }
    .with_env_budget()?;
    let command = match args.command {
        Cmd::Resolve => Command::Resolve,
        Cmd::Koszul => Command::Koszul,
        Cmd::GolodCertify => Command::GolodCertify,
        Cmd::Poincare => Command::Poincare,
        Cmd::Corpus => return run_corpus(&args.spec, &options),
    };
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| RunError::Input(format!("{}: {e}", args.spec.display())))?;
    let spec = parse_problem(&text)?;
    run_command(&spec, command, &options)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(report) => {
            match &args.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
                        eprintln!("golodlab: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                    println!("{}", report.summary());
                }
                None => println!("{}", report.to_json()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("golodlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
