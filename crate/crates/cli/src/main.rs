mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use report::{exit_code, overall, Report};

const USAGE_EXIT: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE_EXIT) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match commands::run(&cli, &mut |line| eprintln!("{line}")) {
        Ok(o) => o,
        Err(commands::UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(USAGE_EXIT);
        }
    };
    let status = overall(&outcome.checks);
    let report = Report {
        tool: "fimod",
        version: env!("CARGO_PKG_VERSION"),
        seed: cli.seed,
        config: serde_json::to_value(&cli).expect("serializable config"),
        status,
        checks: outcome.checks,
        result: outcome.result.into(),
        table: outcome.table,
    };
    let text = match (cli.format, &report.table) {
        (Format::Auto | Format::Csv, Some(t)) => t.clone(),
        _ => serde_json::to_string_pretty(&report).expect("serializable report") + "\n",
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE_EXIT);
    }
    ExitCode::from(exit_code(status) as u8)
}
