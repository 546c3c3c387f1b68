use std::io::Write;

use clap::Parser;

fn main() {
    let cli = chainlab::Cli::parse();
    let (out, err, code) = chainlab::run(&cli);
    std::io::stdout().write_all(out.as_bytes()).ok();
    std::io::stderr().write_all(err.as_bytes()).ok();
    std::process::exit(code as i32);
}
