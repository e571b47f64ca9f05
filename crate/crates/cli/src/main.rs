//! `ampforge` command-line front end.
//!
//! Exit codes: 0 when every built-in assertion passed, 1 on assertion
//! failure, 2 on usage errors. `AMPFORGE_MAX_QUBITS` overrides the register
//! cap (default 14).

use std::path::PathBuf;
use std::process::ExitCode;

use ampforge_cli::config::{command_from_config, Command};
use ampforge_cli::experiments;
use ampforge_cli::output::write_outputs;
use clap::Parser;

#[derive(Parser)]
#[command(
    name = "ampforge",
    about = "Gate-exact simulation of non-linear quantum amplitude transformations",
    version
)]
struct Cli {
    /// JSON ExperimentConfig file; stands in for a subcommand
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

fn main() -> ExitCode {
    if let Ok(value) = std::env::var("AMPFORGE_MAX_QUBITS") {
        match value.parse::<usize>() {
            Ok(n) if n >= 1 => ampforge::linalg::set_max_qubits(n),
            _ => {
                eprintln!("error: AMPFORGE_MAX_QUBITS must be a positive integer, got '{value}'");
                return ExitCode::from(2);
            }
        }
    }

    let cli = Cli::parse();
    let command = match (cli.command, cli.config) {
        (Some(c), None) => c,
        (None, Some(path)) => match command_from_config(&path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        (Some(_), Some(_)) => {
            eprintln!("error: pass either a subcommand or --config, not both");
            return ExitCode::from(2);
        }
        (None, None) => {
            eprintln!("error: a subcommand or --config file is required (try --help)");
            return ExitCode::from(2);
        }
    };

    let (output, result) = match &command {
        Command::EncodeCheck(a) => (a.common.output.clone(), experiments::encode_check(a)),
        Command::Transform(a) => (a.common.output.clone(), experiments::transform(a)),
        Command::ApproxError(a) => (a.common.output.clone(), experiments::approx_error(a)),
        Command::BenchmarkTanh(a) => (a.common.output.clone(), experiments::benchmark(a)),
        Command::MaxFind(a) => (a.common.output.clone(), experiments::max_find(a)),
        Command::PrepareState(a) => (a.common.output.clone(), experiments::prepare(a)),
        Command::LemmaFuzz(a) => (a.common.output.clone(), experiments::lemma_fuzz(a)),
    };

    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            // parameter-shaped problems are usage errors; anything else is a
            // failed run
            let code = match e {
                ampforge::Error::InvalidParameter { .. } => 2,
                _ => 1,
            };
            eprintln!("error: {e}");
            return ExitCode::from(code);
        }
    };

    match output {
        Some(prefix) => {
            if let Err(e) = write_outputs(&prefix, &outcome.table) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            for (ext, body) in &outcome.extra {
                if let Err(e) = std::fs::write(prefix.with_extension(ext), body) {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
        }
        None => {
            print!("{}", outcome.table.to_csv());
            for (_, body) in &outcome.extra {
                println!("{body}");
            }
        }
    }
    eprintln!("{}", outcome.summary);
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        eprintln!("one or more assertions failed");
        ExitCode::from(1)
    }
}
