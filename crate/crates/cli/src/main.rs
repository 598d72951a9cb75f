use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use scnr_cli::{exact_limit_note, run, Cli, EXIT_CAPACITY};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("{w}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(74);
            }
            ExitCode::from(out.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            if failure.code == EXIT_CAPACITY {
                eprintln!("note: {}", exact_limit_note());
            }
            ExitCode::from(failure.code)
        }
    }
}
