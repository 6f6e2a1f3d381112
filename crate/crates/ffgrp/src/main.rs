use clap::Parser;

use ffgrp::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (output, code) = run(&cli);
    if code == 2 {
        eprintln!("{output}");
    } else {
        print!("{output}");
        if !output.ends_with('\n') && !output.is_empty() {
            println!();
        }
    }
    std::process::exit(code);
}
