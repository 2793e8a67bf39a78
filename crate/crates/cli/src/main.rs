use std::io::Write;

use clap::Parser;

fn main() {
    let cli = chowres_cli::Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let (text, code) = chowres_cli::run(&cli, argv);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
    let _ = stdout.flush();
    std::process::exit(code);
}
