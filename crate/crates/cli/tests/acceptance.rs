use std::process::ExitCode;

use staircase_cli::verify::{checks, format_outcome, run_check, Level};

fn main() -> ExitCode {
    let mut failed = 0;
    for check in checks() {
        let outcome = run_check(&check, Level::Desk);
        println!("{}", format_outcome(&outcome));
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all checks passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} check(s) failed");
        ExitCode::FAILURE
    }
}
