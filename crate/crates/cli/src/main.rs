use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::Parser;
use courbe_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let (Some(path), Some(svg)) = (&cli.svg, &report.svg) {
        if let Err(e) = std::fs::write(path, svg) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    let out = if cli.json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&report.to_json()).expect("json")
        )
    } else {
        report.text
    };
    match std::io::stdout().lock().write_all(out.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        _ => ExitCode::SUCCESS,
    }
}
