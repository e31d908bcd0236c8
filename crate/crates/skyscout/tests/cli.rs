//! CLI surface tests: exit codes, one-line errors, and the generate
//! subcommand examples.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skyscout"))
}

#[test]
fn disjoint_generate_prints_offline_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "generate",
            "disjoint",
            "--lengths",
            "10,12,15",
            "--vg",
            "1",
            "--va",
            "2",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("L* = 15"), "{stdout}");
    assert!(dir.path().join("graph.json").exists());
    assert!(dir.path().join("scenario.json").exists());
}

#[test]
fn random_zero_probability_has_no_blockages() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    assert!(bin()
        .args(["generate", "grid", "--rows", "3", "--cols", "3", "--out"])
        .arg(&graph)
        .status()
        .unwrap()
        .success());
    let scenario = dir.path().join("sc.json");
    let out = bin()
        .args([
            "generate",
            "random",
            "--block-prob",
            "0",
            "--start",
            "n000x000",
        ])
        .args(["--goal", "n002x002", "--uav-start", "n000x000", "--graph"])
        .arg(&graph)
        .arg("--out")
        .arg(&scenario)
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&scenario).unwrap()).unwrap();
    assert_eq!(doc["blockages"].as_array().unwrap().len(), 0);
    assert_eq!(doc["s"], "n000x000");
}

#[test]
fn random_disconnected_pair_reports_unreachable_goal() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    // two components: a-b and c-d
    std::fs::write(
        &graph,
        r#"{"vertices":[{"id":"a","x":0,"y":0},{"id":"b","x":1,"y":0},
                        {"id":"c","x":10,"y":10},{"id":"d","x":11,"y":10}],
            "edges":[{"u":"a","v":"b"},{"u":"c","v":"d"}]}"#,
    )
    .unwrap();
    let out = bin()
        .args([
            "generate",
            "random",
            "--start",
            "a",
            "--goal",
            "c",
            "--uav-start",
            "a",
        ])
        .arg("--graph")
        .arg(&graph)
        .arg("--out")
        .arg(dir.path().join("sc.json"))
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unreachable goal"), "{err}");
    assert_eq!(err.lines().count(), 1, "one-line error expected: {err}");
}

#[test]
fn run_rejects_unknown_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    assert!(bin()
        .args(["generate", "grid", "--rows", "3", "--cols", "3", "--out"])
        .arg(&graph)
        .status()
        .unwrap()
        .success());
    let out = bin()
        .args([
            "run",
            "--instances",
            "1",
            "--strategies",
            "warp_drive",
            "--graph",
        ])
        .arg(&graph)
        .arg("--out")
        .arg(dir.path().join("r.csv"))
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("warp_drive"), "{err}");
}

#[test]
fn report_on_empty_csv_fails_with_no_data_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("empty.csv");
    std::fs::write(
        &csv,
        "map,instance,strategy,ugv_time_s,uav_time_s,l_star_m,ratio\n",
    )
    .unwrap();
    let out = bin().arg("report").arg(&csv).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no data rows"));
}

#[test]
fn report_rejects_missing_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bad.csv");
    std::fs::write(&csv, "map,strategy\n").unwrap();
    let out = bin().arg("report").arg(&csv).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing column"));
}

#[test]
fn run_shape_one_instance_all_strategies() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    assert!(bin()
        .args(["generate", "grid", "--rows", "4", "--cols", "4", "--out"])
        .arg(&graph)
        .status()
        .unwrap()
        .success());
    let csv = dir.path().join("r.csv");
    let out = bin()
        .args(["run", "--instances", "1", "--graph"])
        .arg(&graph)
        .arg("--out")
        .arg(&csv)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    // header + 4 data rows + 4 mean rows
    assert_eq!(lines.len(), 9, "{text}");
    assert_eq!(
        lines[0],
        "map,instance,strategy,ugv_time_s,uav_time_s,l_star_m,ratio"
    );
    assert_eq!(lines.iter().filter(|l| l.contains(",mean,")).count(), 4);
}
