use std::io;
use std::process::ExitCode;

use clap::Parser;
use envelope_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut stdout, mut stderr) = (io::stdout().lock(), io::stderr().lock());
    match run(cli, &mut stdout, &mut stderr) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
