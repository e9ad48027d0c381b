use std::process::ExitCode;

use clap::Parser;
use staircase_cli::commands::{run, Cli};
use staircase_cli::exit;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("staircase: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
