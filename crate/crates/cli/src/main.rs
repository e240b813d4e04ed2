use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use tdcrit_cli::{max_order, run, Cli, Context, MAX_N_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = std::env::var(MAX_N_ENV).ok();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = max_order(env.as_deref()).and_then(|max_n| {
        let mut ctx = Context {
            max_n,
            stdin: io::stdin().lock(),
            out: &mut out,
        };
        run(cli, &mut ctx)
    });
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
