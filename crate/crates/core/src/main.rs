use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use primecf::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.run(&mut out) {
        Ok(()) => {
            let _ = out.flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("primecf: {e}");
            ExitCode::FAILURE
        }
    }
}
