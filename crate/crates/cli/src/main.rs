use std::process::ExitCode;

use chiral_dicke_cli::{execute, resolve, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = resolve(&cli).and_then(|spec| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(spec.threads)
            .build_global()?;
        execute(&spec)
    });
    match result {
        Ok(s) if s.error_rows == 0 => ExitCode::SUCCESS,
        Ok(s) => {
            eprintln!("{} of {} rows failed", s.error_rows, s.rows);
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
