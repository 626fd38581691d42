// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::{Command, Output};

fn spingroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spingroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn verify_passes_with_seed_and_trials() {
    let o = spingroup(&["verify", "--seed", "7", "--trials", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("overall: PASS\n"));
}

#[test]
fn verify_rejects_zero_trials() {
    let o = spingroup(&["verify", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_fails_below_double_precision() {
    let o = spingroup(&["verify", "--trials", "20", "--tol-strict", "1e-30", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc = json(&o);
    assert_eq!(doc["pass"], false);
    let failing: Vec<&serde_json::Value> = doc["properties"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["pass"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing[0]["counterexample"]["replay"]
        .as_str()
        .unwrap()
        .starts_with("spingroup factorize"));
}

#[test]
fn verify_json_is_deterministic() {
    let a = spingroup(&["verify", "--trials", "30", "--json"]);
    let b = spingroup(&["verify", "--trials", "30", "--json", "--serial"]);
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &Output| {
        let mut v = json(o);
        v["config"]["parallel"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
#[allow(clippy::approx_constant)]
fn factorize_rest_frame() {
    let o = spingroup(&[
        "factorize",
        "--p",
        "0,0,0",
        "--spin",
        "0,0,1",
        "--phi",
        "3.14159",
        "--order",
        "br",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o);
    assert!((d["rotation_angle_2r"].as_f64().unwrap() - 3.14159).abs() < 1e-12);
    assert!(d["boost_param"].as_f64().unwrap() < 1e-15);
    let b = d["boost_factor"].as_array().unwrap();
    for (r, row) in b.iter().enumerate() {
        for (c, cell) in row.as_array().unwrap().iter().enumerate() {
            let expected = if r == c { 1.0 } else { 0.0 };
            assert!((cell[0].as_f64().unwrap() - expected).abs() < 1e-12);
            assert!(cell[1].as_f64().unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn factorize_desk_values_in_both_orders() {
    let run = |order| {
        let o = spingroup(&[
            "factorize",
            "--p",
            "1,0,0",
            "--spin",
            "0,0,1",
            "--phi",
            "1.5707963",
            "--order",
            order,
            "--json",
        ]);
        assert_eq!(o.status.code(), Some(0));
        json(&o)
    };
    let (br, rb) = (run("br"), run("rb"));
    for d in [&br, &rb] {
        assert!((d["rotation_angle_2r"].as_f64().unwrap() - 1.910633).abs() < 1e-6);
        assert!((d["boost_param"].as_f64().unwrap() - 0.577350).abs() < 1e-6);
        assert!((d["boost_beta"].as_f64().unwrap() - 0.866025).abs() < 1e-6);
    }
    let dir = |d: &serde_json::Value, k: usize| d["boost_direction"][k].as_f64().unwrap();
    // the component along p_perp (here x) flips, the rest is shared
    assert!((dir(&br, 0) + dir(&rb, 0)).abs() < 1e-12);
    assert!(dir(&br, 0).abs() > 0.5);
    assert!((dir(&br, 1) - dir(&rb, 1)).abs() < 1e-12);
}

#[test]
fn factorize_normalizes_spin_and_rejects_zero() {
    let o = spingroup(&[
        "factorize",
        "--p",
        "0.5,-1,0",
        "--spin",
        "0,3,4",
        "--phi",
        "1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o);
    assert_eq!(d["input"]["spin_normalized"], true);
    assert!((d["input"]["spin"][1].as_f64().unwrap() - 0.6).abs() < 1e-15);

    let o = spingroup(&["factorize", "--p", "0,0,0", "--spin", "0,0,0", "--phi", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_csv_shape() {
    let o = spingroup(&[
        "sweep",
        "--p",
        "0,0,0",
        "--spin",
        "1,0,0",
        "--phi-max",
        "6",
        "--steps",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("phi,rot2r,u,beta,bdir_x,bdir_y,bdir_z,phase_re,phase_im")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 13);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), 9);
        assert_eq!(row[0], 6.0 * i as f64 / 12.0);
        assert_eq!(row[3], 0.0);
        assert!((row[1] - row[0]).abs() < 1e-12);
    }
}

#[test]
fn sweep_writes_file_and_reports_bad_paths() {
    let dir = std::env::temp_dir().join(format!("spingroup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let o = spingroup(&[
        "sweep",
        "--p",
        "1,0,0",
        "--spin",
        "0,0,1",
        "--phi-max",
        "1",
        "--steps",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();

    let bad = dir.join("missing").join("sweep.csv");
    let o = spingroup(&[
        "sweep",
        "--p",
        "1,0,0",
        "--spin",
        "0,0,1",
        "--phi-max",
        "1",
        "--steps",
        "2",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[
            "sweep",
            "--p",
            "0,0,0",
            "--spin",
            "0,0,1",
            "--phi-max",
            "1",
            "--steps",
            "1",
        ][..],
        &["factorize", "--p", "1,0", "--spin", "0,0,1", "--phi", "1"],
        &[
            "factorize",
            "--p",
            "0,0,0",
            "--spin",
            "0,0,1",
            "--phi",
            "1",
            "--order",
            "xy",
        ],
        &["verify", "--mass", "-1"],
        &[],
    ] {
        assert_eq!(spingroup(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(spingroup(&["--version"]).status.code(), Some(0));
}
