use clap::Parser;

use dmds::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
