//! `cue` — sampling and spacing-statistics experiments on the unitary
//! group, from the command line.
//!
//! Exit status: 0 on success, 2 on usage errors (bad flags or values),
//! 1 on runtime errors (experiment failures, unwritable output). Errors
//! go to standard error only.

mod args;
mod commands;
mod emit;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    let seed = match args::resolve_seed(cli.common.seed) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };
    if let Err(e) = commands::run(cli.command, &cli.common, seed) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
