use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use kscrypt::exec::configure_threads;
use kscrypt::Execution;

mod args;
mod commands;
mod error;

use args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let exec = if cli.threads > 1 {
        configure_threads(cli.threads as usize);
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = commands::run(cli.command, exec, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) => match flushed {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("kscrypt: cannot write output: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("kscrypt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
