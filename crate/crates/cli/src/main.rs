use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use smr_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            eprint!("{}", out.stderr);
            print!("{}", out.stdout);
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Disagreement { report, .. } = &e {
                print!("{report}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
