//! One line per acceptance criterion. A criterion passes only with status
//! `Pass`: vacuous, skipped and over-budget checks count as failures.

use std::process::ExitCode;

use frattini::verify::{run_suite_with, CheckStatus, Context};

fn main() -> ExitCode {
    let ctx = Context::new();
    let suite = run_suite_with(&ctx, None, |_| {});
    let mut failed = 0;
    for (i, c) in suite.checks.iter().enumerate() {
        let ok = c.status == CheckStatus::Pass;
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {}: {} ({} subchecks, {:.2} s of {} s) {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            c.name,
            c.claim,
            c.subchecks.len(),
            c.elapsed_ms as f64 / 1000.0,
            c.budget_secs,
            c.summary
        );
        for f in c.failures() {
            println!("     {}: {}", f.name, f.detail);
        }
    }
    println!("{} of {} criteria passed", suite.checks.len() - failed, suite.checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
