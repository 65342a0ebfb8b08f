use std::fs;
use std::process::{Command, Output};

fn ti2kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ti2kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_examples() {
    let cases = [
        (vec!["compute", "ti2", "1"], "0.915965594177219"),
        (
            vec!["compute", "phi", "1", "3.141592653589793"],
            "2.467401100272340",
        ),
        (vec!["compute", "clausen2", "0"], "0"),
        (vec!["compute", "ei", "-1"], "-0.219383934395520"),
        (vec!["compute", "hurwitz", "2", "1"], "1.644934066848230"),
        (vec!["compute", "catalan"], "0.915965594177219"),
        (vec!["compute", "b-of-a", "1"], "2.416908866095800"),
        (
            vec!["compute", "li2", "0", "1"],
            "-0.205616758356028 0.915965594177219",
        ),
    ];
    for (args, expected) in cases {
        let out = ti2kit(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&out).trim(), expected, "{args:?}");
    }
}

#[test]
fn compute_h_and_k1_agree() {
    let h = ti2kit(&["compute", "H", "1", "1"]);
    let k = ti2kit(&["compute", "K1"]);
    let h: f64 = stdout(&h).trim().parse().unwrap();
    let k: f64 = stdout(&k).trim().parse().unwrap();
    assert!((h - k).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ti2kit(&["compute", "nosuch", "1"]).status.code(), Some(2));
    assert_eq!(ti2kit(&["compute", "ti2"]).status.code(), Some(2));
    assert_eq!(ti2kit(&["compute", "hurwitz", "2"]).status.code(), Some(2));
    assert_eq!(ti2kit(&["verify", "theorem9"]).status.code(), Some(2));
    assert_eq!(
        ti2kit(&["verify", "remark1", "--K", "zero"]).status.code(),
        Some(2)
    );
    assert_eq!(ti2kit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_three() {
    assert_eq!(
        ti2kit(&["compute", "hurwitz", "1", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(ti2kit(&["compute", "li2", "3"]).status.code(), Some(3));
    assert_eq!(ti2kit(&["compute", "ei", "2"]).status.code(), Some(3));
    assert_eq!(ti2kit(&["compute", "b-of-a", "0.1"]).status.code(), Some(3));
    assert_eq!(
        ti2kit(&["verify", "theorem1", "--a", "0.1"]).status.code(),
        Some(3)
    );
}

#[test]
fn failing_identity_exits_one() {
    let out = ti2kit(&["verify", "corollary4", "--tol", "1e-30", "--theta", "0.3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unwritable_output_exits_four() {
    let out = ti2kit(&["verify", "remark1", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(4));
    let out = ti2kit(&["verify", "remark1", "--config", "/nonexistent-dir/cfg"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_examples() {
    let out = ti2kit(&["verify", "remark1", "--K", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"pass\": true"));

    let out = ti2kit(&["verify", "theorem1", "--a", "1", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().ends_with("PASS"));
}

#[test]
fn verify_all_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let a = ti2kit(&[
        "verify",
        "all",
        "--format",
        "json",
        "--out",
        first.to_str().unwrap(),
    ]);
    let b = ti2kit(&[
        "verify",
        "all",
        "--format",
        "json",
        "--workers",
        "1",
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let first = fs::read(first).unwrap();
    assert!(!first.is_empty());
    assert_eq!(first, fs::read(second).unwrap());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("verify.cfg");
    fs::write(&cfg, "# overrides\nK = 7\nformat = table\n").unwrap();
    let out = ti2kit(&["verify", "remark1", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("K=7"));

    let out = ti2kit(&[
        "verify",
        "remark1",
        "--config",
        cfg.to_str().unwrap(),
        "--K",
        "3",
        "--format",
        "json",
    ]);
    assert!(stdout(&out).contains("\"K\": 3.0000000000000000e0"));

    fs::write(&cfg, "not a pair\n").unwrap();
    let out = ti2kit(&["verify", "remark1", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
