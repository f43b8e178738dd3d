use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_bike");

fn bike(args: &[&str], entropy: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("BIKE_TEST_ENTROPY");
    if let Some(e) = entropy {
        cmd.env("BIKE_TEST_ENTROPY", e);
    }
    cmd.output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn file_pipeline_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let (sk, pk, ct) = (
        dir.path().join("sk"),
        dir.path().join("pk"),
        dir.path().join("ct"),
    );
    let (ss1, ss2) = (dir.path().join("ss1"), dir.path().join("ss2"));

    let out = bike(&["keygen", "--sk", p(&sk), "--pk", p(&pk)], Some("01"));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = bike(
        &["encaps", "--pk", p(&pk), "--ct", p(&ct), "--ss", p(&ss1)],
        Some("02"),
    );
    assert!(out.status.success());
    let printed = String::from_utf8(out.stdout).unwrap();
    let out = bike(
        &["decaps", "--sk", p(&sk), "--ct", p(&ct), "--out", p(&ss2)],
        None,
    );
    assert!(out.status.success());

    let (a, b) = (std::fs::read(&ss1).unwrap(), std::fs::read(&ss2).unwrap());
    assert_eq!(a.len(), 32);
    assert_eq!(a, b);
    assert_eq!(printed.trim(), hex::encode(&a));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        hex::encode(&b)
    );
}

#[test]
fn test_entropy_makes_keys_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let keys: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let (sk, pk) = (
                dir.path().join(format!("sk{i}")),
                dir.path().join(format!("pk{i}")),
            );
            assert!(
                bike(&["keygen", "--sk", p(&sk), "--pk", p(&pk)], Some("c0ffee"))
                    .status
                    .success()
            );
            std::fs::read(pk).unwrap()
        })
        .collect();
    assert_eq!(keys[0], keys[1]);
    assert_eq!(keys[0].len(), 1541);
}

#[test]
fn truncated_ciphertext_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let (sk, pk, ct, ss) = (
        dir.path().join("sk"),
        dir.path().join("pk"),
        dir.path().join("ct"),
        dir.path().join("ss"),
    );
    assert!(
        bike(&["keygen", "--sk", p(&sk), "--pk", p(&pk)], Some("03"))
            .status
            .success()
    );
    assert!(bike(
        &["encaps", "--pk", p(&pk), "--ct", p(&ct), "--ss", p(&ss)],
        Some("04")
    )
    .status
    .success());
    let bytes = std::fs::read(&ct).unwrap();
    std::fs::write(&ct, &bytes[..bytes.len() - 5]).unwrap();
    let out = bike(
        &["decaps", "--sk", p(&sk), "--ct", p(&ct), "--ss", p(&ss)],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ciphertext"));
}

#[test]
fn missing_file_and_bad_flags_exit_2() {
    assert_eq!(
        bike(
            &[
                "decaps",
                "--sk",
                "/nonexistent/sk",
                "--ct",
                "x",
                "--ss",
                "y"
            ],
            None
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(bike(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(
        bike(&["--params", "level9", "selftest"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bike(&["codesign", "--budget", "Z-9999"], None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn codesign_reports_published_partition() {
    let out = bike(&["codesign", "--budget", "Z-7020"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("288.18"), "{text}");
    assert!(text.contains("2.82x"), "{text}");

    let out = bike(
        &[
            "codesign",
            "--budget",
            "Z-7015",
            "--strategy",
            "bnb",
            "--format",
            "json",
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["total_latency_ms"].as_f64().unwrap() - 482.48).abs() < 0.01);

    let out = bike(&["codesign"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in ["617.31", "482.48", "288.18", "279.65", "811.61"] {
        assert!(text.contains(needle), "{needle} missing from\n{text}");
    }
}

#[test]
fn selftest_passes() {
    let out = bike(&["selftest"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let out = bike(
        &[
            "bench",
            "--reps",
            "3",
            "--depths",
            "0,3",
            "--primitives",
            "encaps",
            "--format",
            "csv",
            "--out",
            p(&csv),
        ],
        Some("05"),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = bike_codesign::bench::from_csv(&std::fs::read_to_string(csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].speedup_vs_reference, 1.0);
    assert_eq!(bike(&["bench", "--reps", "2"], None).status.code(), Some(2));
}
