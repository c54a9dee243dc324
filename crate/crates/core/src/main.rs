use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use q1d_hydrogen::cli::{run, Cli, RunConfig, MAX_EVALS_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = cli.command.kind_and_args();
    let max_evals = std::env::var(MAX_EVALS_ENV).ok();

    let result = RunConfig::from_args(kind, args, max_evals.as_deref()).and_then(|cfg| {
        let out = run(&cfg)?;
        out.write_file()?;
        Ok(out)
    });

    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.status.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_status().code() as u8)
        }
    }
}
