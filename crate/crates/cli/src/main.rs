mod config;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::{Args, RunConfig};

fn main() -> ExitCode {
    let cfg = match RunConfig::from_args(Args::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(run::EXIT_INPUT);
        }
    };
    match run::run(&cfg) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(run::exit_code(&e))
        }
    }
}
