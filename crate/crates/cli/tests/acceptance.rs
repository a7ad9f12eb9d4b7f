//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::Instant;

use fqg_core::selftest::{run_criterion, CRITERIA};
use fqg_core::Exact;

const BUDGET_SECS: f64 = 60.0;

fn determinism() -> Result<String, String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_fqg"))
            .args(["selftest", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() || !b.status.success() {
        return Err(format!("selftest exited with {} and {}", a.status, b.status));
    }
    if a.stdout != b.stdout {
        return Err("outputs differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = 0;
    for id in 1..=CRITERIA {
        let t = Instant::now();
        match run_criterion::<Exact>(id) {
            Ok(o) => {
                let bad: Vec<String> = o
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name.clone())
                    .chain(o.reports.iter().filter(|r| !r.passed()).map(|r| r.subject.clone()))
                    .collect();
                let status = if o.pass { "PASS" } else { "FAIL" };
                println!("criterion {id}: {status} {} ({:.2}s)", o.title, t.elapsed().as_secs_f64());
                if !o.pass {
                    failed += 1;
                    println!("    failing: {}", bad.join(", "));
                }
            }
            Err(e) => {
                failed += 1;
                println!("criterion {id}: FAIL error: {e}");
            }
        }
    }
    let t = Instant::now();
    let id = CRITERIA + 1;
    match determinism() {
        Ok(note) => println!("criterion {id}: PASS selftest JSON is byte-identical across runs, {note} ({:.2}s)", t.elapsed().as_secs_f64()),
        Err(e) => {
            failed += 1;
            println!("criterion {id}: FAIL selftest JSON determinism: {e}");
        }
    }
    let total = start.elapsed().as_secs_f64();
    let in_budget = total < BUDGET_SECS;
    println!("total {total:.2}s (budget {BUDGET_SECS:.0}s){}", if in_budget { "" } else { " EXCEEDED" });
    if failed > 0 || !in_budget {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
