use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fixloc_core::cli::{run, CommandConfig};

fn main() -> ExitCode {
    let config = CommandConfig::parse();
    let out = run(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
