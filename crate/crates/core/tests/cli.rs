mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::data_path;
use serde_json::Value;

fn fpcomm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpcomm"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    std::fs::write(&path, stdout(&fpcomm(&full))).unwrap();
    path_str(&path).to_owned()
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/run_report.schema.json"),
    )
    .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(fpcomm(&["--help"]).status.code(), Some(0));
    assert_eq!(fpcomm(&["--version"]).status.code(), Some(0));
    assert_eq!(fpcomm(&[]).status.code(), Some(1));
    assert_eq!(
        fpcomm(&["run", "--input", "x", "--algorithm", "louvain"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(fpcomm(&["gen", "ring", "2", "5"]).status.code(), Some(1));
    let karate = data_path("karate.txt");
    assert_eq!(
        fpcomm(&[
            "run",
            "-i",
            path_str(&karate),
            "-a",
            "fastfp",
            "--threshold",
            "0"
        ])
        .status
        .code(),
        Some(1)
    );
    let missing = fpcomm(&["run", "--input", "/nonexistent/edges.txt"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/edges.txt"));
}

#[test]
fn malformed_input_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "# header\n0 1\n1 x\n").unwrap();
    let out = fpcomm(&["run", "--input", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn gen_is_deterministic_and_sized() {
    for (args, lines) in [
        (["gen", "ring", "30", "5"], 330),
        (["gen", "bridged", "20", "5"], 404),
        (["gen", "ring", "3", "3"], 12),
    ] {
        let a = stdout(&fpcomm(&args));
        assert_eq!(a.lines().count(), lines);
        assert_eq!(a, stdout(&fpcomm(&args)));
    }
}

#[test]
fn score_resolution_limit_partitions() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write_gen(dir.path(), "ring.txt", &["ring", "30", "5"]);
    let part = dir.path().join("ring.part");
    std::fs::write(
        &part,
        (0..150)
            .map(|u| format!("{u} {}\n", u / 5))
            .collect::<String>(),
    )
    .unwrap();
    let s = json(&fpcomm(&["score", "-i", &ring, "-p", path_str(&part)]));
    assert_eq!(s["fp"], 0.9973);
    assert_eq!(s["modules"], 30);
    assert!((s["modularity"].as_f64().unwrap() - 0.8758).abs() < 1e-4);

    // Two K20 then two K5: nodes 0..20, 20..40, 40..45, 45..50.
    let bridged = write_gen(dir.path(), "bridged.txt", &["bridged", "20", "5"]);
    let block = |u: usize| if u < 40 { u / 20 } else { 2 + (u - 40) / 5 };
    std::fs::write(
        &part,
        (0..50)
            .map(|u| format!("{u} {}\n", block(u)))
            .collect::<String>(),
    )
    .unwrap();
    let s = json(&fpcomm(&["score", "-i", &bridged, "-p", path_str(&part)]));
    assert_eq!(s["fp"], 0.9967);
    assert_eq!(s["modules"], 4);
    assert!((s["modularity"].as_f64().unwrap() - 0.5416).abs() < 5e-4);

    // Singletons: 1 - 2m / (n(n-1)).
    std::fs::write(
        &part,
        (0..50).map(|u| format!("{u} {u}\n")).collect::<String>(),
    )
    .unwrap();
    let s = json(&fpcomm(&["score", "-i", &bridged, "-p", path_str(&part)]));
    assert_eq!(s["fp_exact"]["correct"], 1225 - 404);
}

#[test]
fn score_rejects_incomplete_partitions() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write_gen(dir.path(), "ring.txt", &["ring", "3", "3"]);
    let part = dir.path().join("p.txt");
    std::fs::write(&part, "0 0\n1 0\n1 1\n2 0\n42 0\n").unwrap();
    let out = fpcomm(&["score", "-i", &ring, "-p", path_str(&part)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("missing nodes: 3, 4, 5, 6, 7, 8"), "{err}");
    assert!(err.contains("duplicate nodes: 1"), "{err}");
    assert!(err.contains("unknown nodes: 42"), "{err}");
}

#[test]
fn run_reports_validate_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let validator = schema();
    let karate = data_path("karate.txt");
    let part = dir.path().join("karate.part");
    let both = json(&fpcomm(&[
        "run",
        "-i",
        path_str(&karate),
        "-a",
        "both",
        "-p",
        path_str(&part),
    ]));
    assert!(validator.is_valid(&both));
    let reports = both.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["algorithm"], "fpgreed");
    assert_eq!(reports[1]["algorithm"], "fastfp");
    assert_eq!(reports[1]["fp"], 0.6791);
    assert_eq!(reports[1]["params"]["threshold"], 3);
    for (report, suffix) in reports.iter().zip(["fpgreed", "fastfp"]) {
        let file = format!("{}.{suffix}", part.display());
        let s = json(&fpcomm(&["score", "-i", path_str(&karate), "-p", &file]));
        for key in ["fp", "fp_exact", "modularity", "modules"] {
            assert_eq!(report[key], s[key], "{suffix} {key}");
        }
    }

    let single = json(&fpcomm(&[
        "run",
        "-i",
        path_str(&karate),
        "--order",
        "random",
        "--seed",
        "3",
    ]));
    assert!(validator.is_valid(&single));
    assert_eq!(single["params"]["order"], "random");
    assert_eq!(single["params"]["seed"], 3);
    assert_eq!(single["n"], 34);
    assert_eq!(single["m"], 78);
}

#[test]
fn schema_rejects_malformed_reports() {
    let validator = schema();
    let report = json(&fpcomm(&[
        "run",
        "-i",
        path_str(&data_path("florentine.txt")),
    ]));
    assert!(validator.is_valid(&report));
    let mut broken = report.clone();
    broken.as_object_mut().unwrap().remove("fp_exact");
    assert!(!validator.is_valid(&broken));
    let mut broken = report;
    broken["algorithm"] = "louvain".into();
    assert!(!validator.is_valid(&broken));
}

#[test]
fn run_reads_stdin_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write_gen(dir.path(), "ring.txt", &["ring", "30", "5"]);
    let out_path = dir.path().join("report.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_fpcomm"))
        .args([
            "run",
            "-i",
            "-",
            "--dataset",
            "ring",
            "--format",
            "csv",
            "-o",
            path_str(&out_path),
        ])
        .stdin(std::fs::File::open(&ring).unwrap())
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("ring,fpgreed,"));
    assert!(lines[1].contains(",0.9973,11145,11175,"));
    assert!(lines[1].contains(",30,5:30,"));
}

#[test]
fn bench_small_manifest() {
    let manifest = data_path("bench_small.toml");
    let rows = json(&fpcomm(&[
        "bench",
        "-m",
        path_str(&manifest),
        "--jobs",
        "2",
    ]));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    let names: Vec<&str> = rows
        .iter()
        .map(|r| r["dataset"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "karate",
            "karate",
            "dolphins",
            "dolphins",
            "florentine",
            "florentine",
            "lesmis",
            "lesmis",
            "football",
            "football"
        ]
    );
    for r in rows {
        assert_eq!(r["repetitions"], 3);
        let dolphins_present = data_path("dolphins.txt").exists();
        if r["dataset"] == "dolphins" && !dolphins_present {
            assert_eq!(r["status"], "failed");
            assert!(r["error"].as_str().unwrap().contains("dolphins.txt"));
        } else {
            assert_eq!(r["status"], "ok");
            assert!(r["median_ms"].as_f64().unwrap() >= 0.0);
        }
    }
    assert_eq!(rows[0]["fp"], 0.9055);
    assert_eq!(rows[1]["fp"], 0.6791);

    let csv = stdout(&fpcomm(&[
        "bench",
        "-m",
        path_str(&manifest),
        "--format",
        "csv",
    ]));
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.starts_with("dataset,algorithm,status,"));
}

#[test]
fn bench_rejects_bad_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.toml");
    std::fs::write(&manifest, "repetitions = 0\n").unwrap();
    assert_eq!(
        fpcomm(&["bench", "-m", path_str(&manifest)]).status.code(),
        Some(1)
    );
    std::fs::write(&manifest, "algorithms = [\"louvain\"]\n").unwrap();
    assert_eq!(
        fpcomm(&["bench", "-m", path_str(&manifest)]).status.code(),
        Some(1)
    );
}

#[test]
fn oracle_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.txt");
    std::fs::write(&path, "10 11\n11 12\n").unwrap();
    let r = json(&fpcomm(&["oracle", "-i", path_str(&path)]));
    assert_eq!(r["best_fp_exact"]["correct"], 2);
    assert_eq!(r["enumerated"], 5);
    assert_eq!(r["best_partitions"].as_array().unwrap().len(), 3);
    assert_eq!(r["best_partitions"][0], serde_json::json!([[10, 11, 12]]));

    let big = write_gen(dir.path(), "ring.txt", &["ring", "3", "5"]);
    let out = fpcomm(&["oracle", "-i", &big]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the limit of 12"));
}
