// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

use spingroup::harness::{property_ids, run_suite, run_suite_with_fault, Comparison, Fault, SuiteConfig};

fn small(seed: u64) -> SuiteConfig {
    SuiteConfig {
        seed,
        trials: 40,
        ..SuiteConfig::default()
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = run_suite(&small(11)).unwrap().to_json();
    let b = run_suite(&small(11)).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn parallel_and_serial_runs_agree() {
    let parallel = run_suite(&small(3)).unwrap();
    let serial = run_suite(&SuiteConfig {
        parallel: false,
        ..small(3)
    })
    .unwrap();
    for (p, s) in parallel.properties.iter().zip(&serial.properties) {
        assert_eq!(p.id, s.id);
        assert_eq!(p.worst_residual.to_bits(), s.worst_residual.to_bits(), "{}", p.id);
        assert_eq!(p.pass, s.pass);
    }
}

#[test]
fn single_trial_lists_every_property_once() {
    let report = run_suite(&SuiteConfig {
        trials: 1,
        ..SuiteConfig::default()
    })
    .unwrap();
    let ids: Vec<&str> = report.properties.iter().map(|p| p.id.as_str()).collect();
    assert_eq!(ids, property_ids());
    assert!(report.properties.iter().all(|p| p.trials == 1));
    assert!(report.pass);
}

#[test]
fn different_seeds_give_different_residuals() {
    let a = run_suite(&small(1)).unwrap();
    let b = run_suite(&small(2)).unwrap();
    assert!(a.pass && b.pass);
    assert_ne!(a.to_json(), b.to_json());
}

#[test]
fn flipped_sign_breaks_only_factorization() {
    let report = run_suite_with_fault(&small(5), Some(Fault::FlipBoostRotationSign)).unwrap();
    assert!(!report.pass);
    let failed: Vec<&str> = report
        .properties
        .iter()
        .filter(|p| !p.pass)
        .map(|p| p.id.as_str())
        .collect();
    assert_eq!(failed, ["factorization-product", "factorization-polar-oracle"]);
    let cx = report
        .property("factorization-product")
        .unwrap()
        .counterexample
        .as_ref()
        .unwrap();
    assert!(cx.replay.starts_with("spingroup factorize "));
}

#[test]
fn impossible_tolerance_fails_with_counterexamples() {
    let report = run_suite(&SuiteConfig {
        tol_strict: 1e-30,
        ..small(9)
    })
    .unwrap();
    assert!(!report.pass);
    let failing = report.properties.iter().filter(|p| !p.pass);
    for p in failing {
        assert_eq!(p.comparison, Comparison::AtMost);
        assert!(p.worst_residual > p.threshold);
        assert!(p.counterexample.is_some());
    }
}

#[test]
fn invalid_config_is_rejected() {
    assert!(run_suite(&SuiteConfig {
        trials: 0,
        ..SuiteConfig::default()
    })
    .is_err());
}
