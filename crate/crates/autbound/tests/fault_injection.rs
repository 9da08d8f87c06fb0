use autbound::verify::{run, Suite, VerifyOptions};

#[test]
fn halved_bounds_are_caught_with_a_minimal_counterexample() {
    let options = VerifyOptions {
        nmax: 5,
        suites: vec![Suite::Soundness, Suite::Exactness, Suite::Embeddings, Suite::Estimates],
        halve_bounds: true,
        ..Default::default()
    };
    let report = run(&options).unwrap();
    assert!(!report.passed());
    let soundness = report.suite(Suite::Soundness).unwrap();
    assert!(!soundness.passed());
    // The single-vertex graph has aut = 1 and every applicable bound equal to 1.
    assert_eq!(soundness.counterexample.as_ref().unwrap().graph6, "@");
    for s in [Suite::Exactness, Suite::Embeddings, Suite::Estimates] {
        assert!(!report.suite(s).unwrap().passed(), "{s}");
    }
    assert!(report.render().contains("counterexample: @"));
}

#[test]
fn sound_bounds_pass_the_same_sweep() {
    let options = VerifyOptions {
        nmax: 5,
        suites: vec![Suite::Soundness, Suite::Exactness, Suite::Embeddings, Suite::Estimates],
        ..Default::default()
    };
    let report = run(&options).unwrap();
    assert!(report.passed(), "{}", report.render());
}
