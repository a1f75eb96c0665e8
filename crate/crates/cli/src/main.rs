use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use brik_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("brik: {e}");
            e.exit_code()
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(brik_cli::EXIT_CHECK_FAILED);
    }
    ExitCode::from(code)
}
