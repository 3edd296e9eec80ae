mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use output::Usage;

const EXIT_EXPECTATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<fracperm::Error>() {
        Some(fracperm::Error::FieldTooLarge { .. } | fracperm::Error::DegreeOverflow { .. }) => EXIT_INFEASIBLE,
        Some(
            fracperm::Error::UnsupportedCharacteristic(_)
            | fracperm::Error::NotInSubfield
            | fracperm::Error::RequiresCharacteristic(_)
            | fracperm::Error::CharacteristicMismatch { .. }
            | fracperm::Error::Parse(_),
        ) => EXIT_USAGE,
        _ => EXIT_EXPECTATION,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = match &cli.command {
        Command::Verify(a) => commands::run_verify(a),
        Command::Search(a) => commands::run_search(a),
        Command::Classify(a) => commands::run_classify(a),
        Command::Table(a) => commands::run_table(a),
        Command::Solve(a) => commands::run_solve(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_EXPECTATION),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
