use std::io::Write;

use clap::Parser;

fn main() {
    let cli = fts_core::cli::Cli::parse();
    let report = fts_core::cli::run(&cli);
    // A closed stdout (e.g. `| head`) must not change the exit code.
    let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
    for m in &report.messages {
        eprintln!("fts: {m}");
    }
    std::process::exit(report.exit_code);
}
