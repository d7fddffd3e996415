use std::process::ExitCode;

use clap::Parser;
use okapprox::cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match run(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("okapprox: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("okapprox: {msg}");
            ExitCode::from(2)
        }
    }
}
