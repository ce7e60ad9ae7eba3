use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tbm_core::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("tbm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
