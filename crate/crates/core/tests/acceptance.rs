//! One line per acceptance criterion, with the budgets pinned in `fimod::suite`.
//! Runs without the test harness so the lines are printed on success too.

use std::process::ExitCode;

use fimod::suite::{run_suite, Status, SuiteConfig};

fn main() -> ExitCode {
    let config = SuiteConfig::default();
    let report = run_suite(&config, |r| {
        println!("{}", r.line());
        for f in r.failures.iter().take(5) {
            println!("    {f}");
        }
    });
    println!("seed {}; {}", config.seed, report.exclusions);
    let failed: Vec<usize> = report.criteria.iter().filter(|c| c.status != Status::Pass).map(|c| c.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", report.criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: criteria not passing: {failed:?}");
        ExitCode::FAILURE
    }
}
