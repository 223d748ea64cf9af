use std::process::ExitCode;

use clap::Parser;
use stirling::cli::{self, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let args = Cli::parse();
    let code = match cli::run(&args).and_then(|e| cli::emit(&args, &e).map(|()| e.exit_code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    };
    ExitCode::from(code as u8)
}
