use std::process::ExitCode;

use clap::Parser;
use racahkit_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &outcome.rendered).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            print!("{}", outcome.rendered);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
