//! Command-line harness: each experiment is a subcommand producing a [`Report`].

pub mod args;
pub mod commands;
pub mod report;
pub mod text;
pub mod verify;

use std::path::PathBuf;

use thiserror::Error;

pub use args::{Cli, Command};
pub use report::{Report, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] freesep_core::Error),
    #[error("cannot parse {field} = {text:?}: {source}")]
    Parse {
        field: String,
        text: String,
        source: freesep_core::Error,
    },
    #[error("{0}")]
    Usage(String),
    /// The run completed and contradicted an expected property.
    #[error("refuted: {0}")]
    Refuted(freesep_core::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Refuted(_) => 1,
            _ => 2,
        }
    }
}

pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Member(a) => commands::member(a),
        Command::Isolated(a) => commands::isolated(a),
        Command::Witness(a) => commands::witness(a),
        Command::Psep(a) => commands::psep(a),
        Command::Separate(a) => commands::separate(a),
    }
}

/// Runs a command on a pool capped at `threads` workers (all cores if `None`).
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| execute(&cli.command))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn run_args(args: &[&str]) -> Result<Report, CliError> {
        let mut full = vec!["freesep"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).expect("valid arguments"))
    }

    #[test]
    fn member_examples() {
        let r = run_args(&["member", "--rank", "2", "--gens", "xYXyx,y", "--word", "x"]).unwrap();
        assert_eq!(r.outcome, "non-member");
        assert_eq!(r.witnesses["member"], false);
        assert_eq!(r.witnesses["index"], "infinite");
        let r = run_args(&["member", "--gens", "xYXyx,y", "--word", "y"]).unwrap();
        assert_eq!(r.outcome, "member");
        let r = run_args(&["member", "--gens", "xYXyx,y", "--word", ""]).unwrap();
        assert_eq!(r.outcome, "member");
        verify::reverify(&r).unwrap();
    }

    #[test]
    fn member_errors() {
        let e = run_args(&["member", "--rank", "2", "--gens", "xYXyx,z", "--word", "x"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("gens[1]") && e.to_string().contains("position 0"), "{e}");
        let e = run_args(&["member", "--rank", "0", "--word", "x"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn isolated_examples() {
        let r = run_args(&["isolated", "--max-len", "6", "--exponents", "2,3,4,5"]).unwrap();
        assert_eq!(r.status, Status::Consistent);
        assert_eq!(r.counters["violations"], 0);
        let r = run_args(&["isolated", "--gens", "xx,y", "--max-len", "1", "--exponents", "2"]).unwrap();
        assert_eq!(r.status, Status::Counterexample);
        assert_eq!(r.witnesses[0]["root"], "x");
        assert_eq!(r.witnesses[0]["exponent"], 2);
        verify::reverify(&r).unwrap();
        let r = run_args(&["isolated", "--rank", "1", "--gens", "xxx", "--max-len", "1", "--pprime", "3",
            "--exponents", "2,5"]).unwrap();
        assert_eq!(r.status, Status::Consistent);
        let e = run_args(&["isolated", "--pprime", "4"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn witness_examples() {
        let r = run_args(&["witness", "--n", "3"]).unwrap();
        assert_eq!(r.witnesses[0]["witness_ab"], "a");
        assert_eq!(r.witnesses[1]["witness_ab"], "Bab");
        assert_eq!(r.witnesses[1]["discrepancy_weight"], ">=3");
        verify::reverify(&r).unwrap();
        assert_eq!(run_args(&["witness", "--n", "1"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn psep_examples() {
        let r = run_args(&["psep", "--p", "2", "--targets", "ut3,c1-2"]).unwrap();
        assert_eq!(r.status, Status::Consistent);
        assert_eq!(r.counters["homs_total"], 64 + 4 + 16);
        let r = run_args(&["psep", "--gens", "xx,y", "--p", "2", "--targets", "c2"]).unwrap();
        assert_eq!(r.status, Status::Counterexample);
        assert_eq!(r.witnesses[0]["first_separating"]["images"], serde_json::json!([[1], [0]]));
        verify::reverify(&r).unwrap();
        let e = run_args(&["psep", "--p", "5", "--targets", "ut4"]).unwrap_err();
        assert!(e.to_string().contains("budget"), "{e}");
        assert!(run_args(&["psep", "--p", "6"]).is_err());
    }

    #[test]
    fn separate_examples() {
        let r = run_args(&["separate", "--gens", "x", "--word", "y"]).unwrap();
        assert_eq!(r.witnesses["degree"], 2);
        verify::reverify(&r).unwrap();
        let e = run_args(&["separate", "--word", "y"]).unwrap_err();
        assert!(e.to_string().contains("not separable from a member"));
    }

    #[test]
    fn output_independent_of_threads() {
        let one = run_args(&["--threads", "1", "isolated", "--gens", "xx,yxyX", "--max-len", "5"]).unwrap();
        let four = run_args(&["--threads", "4", "isolated", "--gens", "xx,yxyX", "--max-len", "5"]).unwrap();
        assert_eq!(one.deterministic(), four.deterministic());
        assert!(run_args(&["--threads", "0", "witness", "--n", "2"]).is_err());
    }

    #[test]
    fn unknown_flags_are_errors() {
        assert!(Cli::try_parse_from(["freesep", "member", "--word", "x", "--bogus"]).is_err());
        assert!(Cli::try_parse_from(["freesep", "frobnicate"]).is_err());
    }
}
