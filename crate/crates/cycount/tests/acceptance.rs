//! Acceptance harness: one pass/fail line per criterion.
//!
//! Every comparison is exact (tolerance zero). A criterion also fails when it overruns its
//! runtime budget.

use std::time::{Duration, Instant};

use cycount::cli::suites::{run_suite, SuiteConfig, SUITES};
use cycount::cli::{default_corpus_dir, load_corpus};

/// Runtime budget per criterion, in criterion order.
const BUDGETS: [Duration; 10] = [
    Duration::from_secs(1),
    Duration::from_secs(30),
    Duration::from_secs(30),
    Duration::from_secs(300),
    Duration::from_secs(60),
    Duration::from_secs(60),
    Duration::from_secs(300),
    Duration::from_secs(120),
    Duration::from_secs(60),
    Duration::from_secs(120),
];

/// Seed of the random-word corpus.
const SEED: u64 = 0;

fn main() {
    let corpus = load_corpus(&default_corpus_dir()).expect("shipped corpus loads");
    let cfg = SuiteConfig { qs: None, seed: SEED, corpus };
    let mut failed = 0;
    for (i, name) in SUITES.iter().enumerate() {
        let start = Instant::now();
        let outcome = run_suite(name, &cfg);
        let elapsed = start.elapsed();
        let budget = BUDGETS[i];
        let (ok, detail) = match outcome {
            Ok(r) if r.passed && elapsed <= budget => (true, format!("{} cases", r.cases)),
            Ok(r) if r.passed => (false, format!("{} cases, over budget", r.cases)),
            Ok(r) => (false, format!("{} cases, first failure: {}", r.cases, r.counterexample.unwrap_or_default())),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<14} {}  {:>8.2}s / {:>4}s  {}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            detail
        );
    }
    println!("{} of {} criteria passed", SUITES.len() - failed, SUITES.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
