use std::process::ExitCode;

use clap::Parser;

use ncqm::cli::{emit, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok((text, code)) => {
            if let Err(e) = emit(&text, cfg.output.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
