use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fgdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgdt"))
        .args(args)
        .env_remove("FGDT_TIMING")
        .env_remove("FGDT_CACHE")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fgdt-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn passing_claim_exits_zero_with_json() {
    let o = fgdt(&["verify", "--q", "9", "--claim", "Syl"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["claim"], "Syl");
    assert_eq!(reports[0]["status"], "pass");
}

#[test]
fn failing_claim_exits_one_with_witness() {
    let o = fgdt(&["verify", "--q", "7", "--claim", "Conicsol"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["status"], "fail");
    assert_eq!(v[0]["witness"]["kind"], "conicsol_count");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--q", "6"][..],
        &["verify", "--q", "abc"],
        &["verify", "--q", "9..7"],
        &["verify", "--claim", "Nope", "--q", "7"],
        &["verify", "--q", "7", "--jobs", "0"],
        &["design", "--table1", "10"],
        &["design", "--wbs", "9"],
        &["search", "--q", "5", "--k", "3", "--lambda", "2", "--points", "internal"],
        &["search", "--q", "16", "--type", "I", "--k", "3"],
        &["search", "--q", "16", "--k", "3"],
        &["bogus"],
    ] {
        let o = fgdt(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn text_and_csv_formats() {
    let o = fgdt(&["verify", "--q", "7..9", "--claim", "Census", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("PASS  Census") && l.contains("q=7")));
    assert!(text.lines().any(|l| l.starts_with("PASS  Census") && l.contains("q=8")));
    assert!(text.trim_end().ends_with("3 passed, 0 failed, 0 skipped"));

    let o = fgdt(&["verify", "--q", "5", "--claim", "Orbit", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "claim,q,status,reason,expected,observed,witness,millis");
    assert!(lines.next().unwrap().starts_with("Orbit,5,skipped,"));
}

#[test]
fn output_file_and_identical_reruns() {
    let dir = scratch("verify");
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for path in [&a, &b] {
        let o = fgdt(&["verify", "--q", "2..16", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&o), 1);
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn design_writes_blocks_and_labels() {
    let o = fgdt(&["design", "--table1", "5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "11 11 5 2");
    assert_eq!(text.lines().count(), 12);

    let dir = scratch("design");
    let path = dir.join("w8.blocks");
    let o = fgdt(&["design", "--wbs", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let summary: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["params"]["v"], 28);
    let blocks = std::fs::read_to_string(&path).unwrap();
    assert!(blocks.starts_with("28 63 4 1\n"));
    let labels: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("w8.blocks.labels.json")).unwrap()).unwrap();
    assert_eq!(labels.as_object().unwrap().len(), 28);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn search_reports_no_designs_for_the_prescribed_settings() {
    for args in [&["search", "--q", "16", "--type", "I"][..], &["search", "--q", "9", "--type", "II"]] {
        let o = fgdt(args);
        assert_eq!(code(&o), 0, "{args:?}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["design_count"], 0);
    }
}

#[test]
fn search_out_directory_holds_summary() {
    let dir = scratch("search");
    let o = fgdt(&[
        "search",
        "--q",
        "7",
        "--k",
        "3",
        "--lambda",
        "2",
        "--points",
        "internal",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let summary: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    let n = summary["design_count"].as_u64().unwrap();
    for i in 0..n {
        assert!(dir.join(format!("design-{i}.blocks")).exists());
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cache_directory_is_filled() {
    let dir = scratch("cache");
    let o = fgdt(&["verify", "--q", "9", "--claim", "BF", "--cache", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0);
    std::fs::remove_dir_all(dir).unwrap();
}
