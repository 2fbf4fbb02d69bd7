//! Runs every reproduction criterion at full size and prints one line each.

use std::process::ExitCode;

use evcom::verify::{render_table, run_criterion, VerifyOptions, CRITERIA};

fn main() -> ExitCode {
    let options = VerifyOptions {
        max_n: 7,
        ..VerifyOptions::default()
    };
    let mut results = Vec::new();
    for number in 1..=CRITERIA {
        let result = run_criterion(number, &options);
        println!("{}", result.summary());
        results.push(result);
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed()).cloned().collect();
    if failed.is_empty() {
        println!("acceptance: all {CRITERIA} criteria passed");
        ExitCode::SUCCESS
    } else {
        eprintln!("{}", render_table(&failed));
        println!("acceptance: {} of {CRITERIA} criteria failed", failed.len());
        ExitCode::FAILURE
    }
}
