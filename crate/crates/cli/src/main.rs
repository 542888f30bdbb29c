use std::process::ExitCode;

use clap::Parser;

use sl_local_cli::{emit_report, run, Cli, EXIT_INPUT_ERROR};

fn main() -> ExitCode {
    // clap exits with 2 on usage errors; 2 is reserved for inconclusive runs.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT_ERROR as u8);
        }
    };
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INPUT_ERROR as u8);
        }
    };
    if let Err(e) = emit_report(&outcome, cli.out.as_deref()) {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_INPUT_ERROR as u8);
    }
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.code as u8)
}
