//! Acceptance gate: one line per criterion, all must pass.
//! Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use mtk_core::report::SuiteReport;
use mtk_core::verify::{run_suite, SuiteOptions};

fn merge(name: &str, parts: Vec<SuiteReport>) -> SuiteReport {
    let mut out = SuiteReport::new(name);
    for p in parts {
        out.cases += p.cases;
        out.passed += p.passed;
        out.failures.extend(p.failures);
    }
    out
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let run = |name: &str| run_suite(name, &opts).expect("known suite");
    let criteria: Vec<(usize, &str, &[&str], usize)> = vec![
        (1, "semidirect abelianization", &["semiab"], 30),
        (2, "wreath abelianization", &["wreath"], 8),
        (3, "symmetric group commutators", &["perm"], 5),
        (4, "elementary closure is the determinant kernel", &["ed"], 6),
        (5, "GL and affine abelianizations", &["gl"], 8),
        (6, "K_0 classes count points", &["k0"], 50),
        (7, "piecewise affine maps", &["aut"], 30),
        (8, "permutation lifts", &["lift"], 3),
        (9, "K_1 closed forms and truncations", &["symbolic"], 10),
        (10, "truncation monotonicity", &["monotone"], 6),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (k, label, suites, min_cases) in criteria {
        let t = Instant::now();
        let r = merge(label, suites.iter().map(|s| run(s)).collect());
        let ok = r.all_passed() && r.cases >= min_cases;
        println!(
            "criterion {k}: {} ({label}; {}/{} cases, {:.1}s)",
            if ok { "pass" } else { "FAIL" },
            r.passed,
            r.cases,
            t.elapsed().as_secs_f64()
        );
        if !ok {
            for f in r.failures.iter().take(5) {
                println!("    {f}");
            }
            failed.push(k);
        }
    }
    let total = start.elapsed();
    println!("total {:.1}s", total.as_secs_f64());
    if total.as_secs() >= 300 {
        println!("acceptance run exceeded five minutes");
        return ExitCode::FAILURE;
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
