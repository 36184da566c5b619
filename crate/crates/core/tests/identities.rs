use permrat::derivation::derive_n3;
use permrat::exec::Exec;
use permrat::fields::make_field;
use permrat::identities::{verify_difference_identity, verify_lemma21, verify_n3, Status};

#[test]
fn n3_suite_passes_and_serializes() {
    let sys = derive_n3().unwrap();
    let report = verify_n3(&sys, 3, &Exec::sequential());
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["seed"], 3);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn breaking_q_is_detected() {
    let mut sys = derive_n3().unwrap();
    sys.q = sys.q.add(&sys.q);
    let report = verify_n3(&sys, 0, &Exec::sequential());
    assert!(!report.passed());
    assert_eq!(report.check("n3.c.Q_terms").unwrap().status, Status::Fail);
}

#[test]
fn randomized_suites_are_reproducible() {
    let a = verify_lemma21(7, 4, 20, 11);
    let b = verify_lemma21(7, 4, 20, 11);
    assert!(a.passed());
    let details = |r: &permrat::identities::Report| r.checks.iter().map(|c| c.details.clone()).collect::<Vec<_>>();
    assert_eq!(details(&a), details(&b));
}

#[test]
fn difference_suite_rejects_zero_trace() {
    let cfg = make_field(5, 3).unwrap();
    let r = verify_difference_identity(5, 3, &cfg.zero(), 10, 0);
    assert!(!r.passed());
    let cfg = make_field(3, 2).unwrap();
    assert!(verify_difference_identity(3, 2, &cfg.one(), 50, 0).passed());
}
