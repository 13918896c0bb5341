use ershov_core::harness::{run_suite, SuiteOptions};
use ershov_core::{BoundFunction, Error};

#[test]
fn constant_bound_is_rejected_cleanly() {
    let opts = SuiteOptions {
        bound: BoundFunction::constant(3),
        corpus: Some(2),
        horizon: Some(2000),
        ..SuiteOptions::default()
    };
    assert_eq!(
        run_suite("transfer", &opts).unwrap_err(),
        Error::InsufficientBound {
            level: 3,
            stages: 2000
        }
    );
}

#[test]
fn unknown_suite() {
    assert!(matches!(
        run_suite("nope", &SuiteOptions::default()),
        Err(Error::UnknownSuite(_))
    ));
}

#[test]
fn reports_are_deterministic() {
    let opts = SuiteOptions {
        corpus: Some(20),
        seed: 9,
        ..SuiteOptions::default()
    };
    let csv = |name| {
        let mut r = run_suite(name, &opts).unwrap();
        r.runtime = Default::default();
        let mut out = Vec::new();
        r.write_csv(&mut out).unwrap();
        out
    };
    for name in ["identity", "decomposition", "limsup"] {
        assert_eq!(csv(name), csv(name));
    }
}
