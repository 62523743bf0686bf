use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use picone_lab::args::Cli;
use picone_lab::config::{from_cli, OUT_ENV};
use picone_lab::{execute, ExitStatus};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(ExitStatus::Config.code() as u8);
        }
    };
    let status = match from_cli(cli, std::env::var_os(OUT_ENV).map(Into::into)) {
        Ok(config) => execute(&config),
        Err(e) => {
            eprintln!("{e}");
            ExitStatus::Config
        }
    };
    ExitCode::from(status.code() as u8)
}
