use std::process::ExitCode;

use clap::Parser;
use tdroute_cli::{report, run, Cli};

fn main() -> ExitCode {
    ExitCode::from(report(run(Cli::parse())))
}
