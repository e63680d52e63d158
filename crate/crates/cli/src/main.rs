use std::io::{stderr, stdout};
use std::process::ExitCode;

use clap::Parser;
use thuemult_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli, &mut stdout().lock(), &mut stderr().lock()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
