use std::io::Write;
use std::process::ExitCode;

use excisive_core::cli;

fn main() -> ExitCode {
    let budget = match cli::budget_from_env() {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(cli::EXIT_USAGE as u8);
        }
    };
    let outcome = cli::run(std::env::args_os(), budget);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
