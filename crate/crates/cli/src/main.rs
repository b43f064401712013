use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gcgeom_cli::{catalog, load, run, CliError, RunOptions};

/// Exact verification of generalized-geometry scenarios.
#[derive(Parser)]
#[command(name = "gcgeom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a bundled scenario by name.
    Run {
        scenario: String,
        /// Format of the report on standard output.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the JSON report to this path.
        #[arg(long)]
        out: Option<String>,
        /// Record per-check wall-clock times (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// List the bundled scenarios.
    List,
    /// Describe what a check id verifies.
    Explain { id: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cmd: Command) -> Result<u8, CliError> {
    match cmd {
        Command::Run { scenario, format, out, timings } => {
            let s = load(&scenario)?;
            let report = run(&s, RunOptions { timings })?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            if let Some(path) = out {
                std::fs::write(&path, report.to_json()).map_err(|e| CliError::Io { path, source: e })?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::List => {
            for (name, kind, desc) in catalog::list()? {
                println!("{name:<16} {kind:<15} {desc}");
            }
            Ok(0)
        }
        Command::Explain { id } => {
            print!("{}", catalog::explain(&id)?);
            Ok(0)
        }
    }
}
