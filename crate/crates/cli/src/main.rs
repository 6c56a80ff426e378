use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use loggf_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            ExitCode::from(outcome.exit_code)
        }
        Err(err) => {
            eprintln!("loggf: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
