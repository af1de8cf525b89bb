use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pdm_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, out)) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(text.as_bytes()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            for note in &out.notes {
                eprintln!("note: {note}");
            }
            for f in &out.failures {
                eprintln!("warning: {f}");
            }
            if out.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    e.exit_code() as u8
}
