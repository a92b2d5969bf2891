use std::process::ExitCode;

use clap::Parser;

use lqscatter_cli::config::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(lqscatter_cli::run(&cli) as u8)
}
