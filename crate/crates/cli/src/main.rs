use std::process::ExitCode;

use clap::Parser;
use freesep_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|report| emit(&cli, &report).map(|_| report)) {
        Ok(report) => {
            if !cli.quiet {
                eprint!("{}", report.human_summary());
            }
            ExitCode::from(report.status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(cli: &Cli, report: &freesep_cli::Report) -> Result<(), CliError> {
    let json = report.to_json();
    match &cli.out {
        Some(path) => std::fs::write(path, json + "\n").map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}
