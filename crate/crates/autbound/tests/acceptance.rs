//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use autbound::verify::{self, Suite, SuiteOutcome, VerifyOptions, VerifyReport};
use autbound_core::bounds::eval_eq1;
use autbound_core::corpus::connected_graphs;
use autbound_core::{aut_order, compose_report, BoundId, Family, Graph, ReportOptions};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

/// Slack on log2 comparisons for irrational bounds.
const LOG2_TOLERANCE: f64 = 1e-9;

/// Connected graph counts for n = 1..=7 and their total.
const EXPECTED_COUNTS: [usize; 7] = [1, 1, 2, 6, 21, 112, 853];
const EXPECTED_TOTAL: usize = 996;

struct Line {
    criterion: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::from(1u32), |acc, i| acc * i)
}

fn int(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn suite_line(criterion: u32, title: &'static str, report: &VerifyReport, suite: Suite) -> Line {
    let s: &SuiteOutcome = report.suite(suite).expect("suite was run");
    let mut detail = format!("{} checks, {} failures", s.checks, s.failures);
    if let Some(c) = &s.counterexample {
        detail.push_str(&format!("; counterexample {} ({})", c.graph6, c.message));
    }
    Line { criterion, title, passed: s.passed() && s.checks > 0, detail }
}

fn criterion_1() -> Line {
    let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).map_or(0, |g| g.len())).collect();
    let total: usize = counts.iter().sum();
    assert_eq!(verify::CONNECTED_COUNTS, EXPECTED_COUNTS);
    let report = verify::run(&VerifyOptions { nmax: 7, suites: vec![Suite::Soundness], ..Default::default() })
        .expect("valid options");
    let mut line = suite_line(1, "soundness sweep, n <= 7, both corollary modes", &report, Suite::Soundness);
    line.passed &= counts == EXPECTED_COUNTS && total == EXPECTED_TOTAL && report.corpus_ok();
    line.detail = format!("{total} graphs {counts:?}; {}", line.detail);
    line
}

/// thm3_orbit with every start vertex tried, as an exact rational.
fn thm3_exhaustive(g: &Graph) -> Option<BigRational> {
    let opts = ReportOptions { bounds: Some(vec![BoundId::Thm3Orbit]), exhaustive_start: true, ..Default::default() };
    let report = compose_report(g, &opts).ok()?;
    report.bounds[0].exact_value().cloned()
}

fn criterion_2() -> Line {
    let mut cases: Vec<(String, Graph, BigUint)> = Vec::new();
    for (n, v) in (3..=7).zip([6u32, 24, 120, 720, 5040]) {
        assert_eq!(factorial(n), BigUint::from(v));
        cases.push((format!("K{n}"), Family::Complete(n).build().unwrap(), BigUint::from(v)));
    }
    for (m, v) in (2..=4).zip([8u32, 72, 1152]) {
        assert_eq!(BigUint::from(2u32) * factorial(m) * factorial(m), BigUint::from(v));
        cases.push((format!("K{m},{m}"), Family::CompleteBipartite(m, m).build().unwrap(), BigUint::from(v)));
    }
    for q in 2..=5 {
        for p in 1..q {
            let g = Family::CompleteBipartite(p, q).build().unwrap();
            cases.push((format!("K{p},{q}"), g, factorial(p) * factorial(q)));
        }
    }
    let mut bad = Vec::new();
    for (name, g, expected) in &cases {
        let aut = aut_order(g).order;
        if thm3_exhaustive(g) != Some(int(expected)) || &aut != expected {
            bad.push(name.clone());
        }
    }
    Line {
        criterion: 2,
        title: "thm3_orbit exact on K_n, K_m,m, K_p,q",
        passed: bad.is_empty(),
        detail: format!("{} graphs, mismatches {bad:?}", cases.len()),
    }
}

fn criterion_3() -> Line {
    let mut bad = Vec::new();
    for n in 3..=7 {
        let g = Family::Complete(n).build().unwrap();
        let value = eval_eq1(&g.degree_stats(), n);
        if value.exact_value() != Some(&int(&factorial(n))) {
            bad.push(n);
        }
    }
    Line {
        criterion: 3,
        title: "eq1 equals n! on K_n, 3 <= n <= 7",
        passed: bad.is_empty(),
        detail: format!("mismatches at n = {bad:?}"),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let report = verify::run(&VerifyOptions {
        nmax: 7,
        suites: vec![Suite::Oracle, Suite::Embeddings, Suite::Estimates, Suite::Greedy, Suite::Orbits],
        ..Default::default()
    })
    .expect("valid options");

    let lines = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        suite_line(
            4,
            "refinement search matches brute force (n <= 6 all, 200 random at n = 7, 8)",
            &report,
            Suite::Oracle,
        ),
        suite_line(5, "aut(G) <= |T -> G| for every spanning tree, n <= 6", &report, Suite::Embeddings),
        suite_line(6, "embedding and tree automorphism estimates, n <= 6", &report, Suite::Estimates),
        suite_line(7, "greedy tree invariants, every start vertex, n <= 7", &report, Suite::Greedy),
        suite_line(8, "orbit sizes divide the group order", &report, Suite::Orbits),
    ];

    for l in &lines {
        println!("criterion {}: {}  {}  [{}]", l.criterion, if l.passed { "PASS" } else { "FAIL" }, l.title, l.detail);
    }
    println!("criterion 9: INFO  no large-scale reproduction applies; covered by criteria 1-8");
    println!(
        "log2 tolerance {LOG2_TOLERANCE:e} (library slack {:e}); elapsed {:.1?}",
        autbound_core::bounds::LOG2_SLACK,
        start.elapsed()
    );
    assert_eq!(autbound_core::bounds::LOG2_SLACK, LOG2_TOLERANCE);

    let failed = lines.iter().filter(|l| !l.passed).count();
    if failed == 0 {
        println!("acceptance: all {} criteria passed", lines.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
