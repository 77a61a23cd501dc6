use std::process::ExitCode;

use clap::Parser;
use wca_cli::{exit_code, run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // usage mistakes are input errors; help and version are not errors
            let code = if err.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("wca: {err:#}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
