//! End-to-end runs of the `ladderkit` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladderkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn build_toric_four() {
    let v = stdout_json(&["build", "--code", "toric", "--size", "4"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["data"]["n_qubits"], 32);
    assert_eq!(v["data"]["n_generators"], 32);
}

#[test]
fn build_rejects_bad_color_size() {
    let out = run(&["build", "--code", "color", "--size", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("N ≡ 0 (mod 12)"));
}

#[test]
fn build_closed_ladder() {
    let v = stdout_json(&["build", "--code", "ladder", "--size", "4", "--closed"]);
    assert_eq!(
        v["data"]["code"]["lattice"]["faces"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
    assert_eq!(v["data"]["k"], 2);
}

#[test]
fn closed_flag_only_for_ladders() {
    assert_eq!(
        run(&["build", "--code", "toric", "--size", "4", "--closed"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn usage_error_exit_code() {
    assert_eq!(
        run(&["build", "--code", "hexagon", "--size", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn disentangle_color_has_three_colors() {
    let v = stdout_json(&["disentangle", "--code", "color", "--size", "12"]);
    let colors: std::collections::BTreeSet<&str> = v["ladders"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["color"].as_str().unwrap())
        .collect();
    assert_eq!(colors.len(), 3);
    assert_eq!(v["ranks"]["original_rank"], v["ranks"]["mapped_rank"]);
}

#[test]
fn disentangle_toric_labels_round_trip() {
    let out = run(&["disentangle", "--code", "toric", "--size", "4"]);
    assert!(out.status.success());
    let report: ladderkit::analysis::DisentangleReport =
        serde_json::from_slice(&out.stdout).unwrap();
    let colors: std::collections::BTreeSet<&str> =
        report.ladders.iter().map(|l| l.color.as_str()).collect();
    assert_eq!(colors, ["blue", "green"].into_iter().collect());
    assert_eq!(report.to_json().as_bytes(), &out.stdout[..]);
}

#[test]
fn entropy_cuts() {
    let v = stdout_json(&[
        "entropy", "--code", "toric", "--size", "2", "--cut", "row:0",
    ]);
    assert_eq!(v["data"]["entropy"], v["data"]["oracle"]);
    for cut in ["empty", "all"] {
        let v = stdout_json(&["entropy", "--code", "toric", "--size", "2", "--cut", cut]);
        assert_eq!(v["data"]["entropy"], 0);
    }
    let v = stdout_json(&[
        "entropy", "--code", "toric", "--size", "4", "--cut", "ladder:0", "--mapped",
    ]);
    assert!(v["data"]["entropy"].is_u64());
    assert_eq!(
        run(&[
            "entropy",
            "--code",
            "toric",
            "--size",
            "2",
            "--cut",
            "diagonal:1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn degeneracy_values() {
    assert_eq!(
        stdout_json(&["degeneracy", "--code", "toric", "--size", "2"])["data"]["k"],
        2
    );
    assert_eq!(
        stdout_json(&["degeneracy", "--code", "color", "--size", "12"])["data"]["k"],
        4
    );
    assert_eq!(
        stdout_json(&["degeneracy", "--code", "ladder", "--size", "4", "--closed"])["data"]["k"],
        2
    );
}

#[test]
fn export_dot_is_deterministic() {
    let args = ["export-dot", "--code", "color", "--size", "12"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let nodes = text
        .lines()
        .filter(|l| l.trim_start().starts_with('q') && !l.contains("--"))
        .count();
    assert_eq!(nodes, 144);
    assert!(
        text.contains("color=red") && text.contains("color=green") && text.contains("color=blue")
    );
    let square =
        String::from_utf8(run(&["export-dot", "--code", "toric", "--size", "4"]).stdout).unwrap();
    assert!(square.contains("transformed") && square.contains("untouched"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ladderkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("code.json");
    let out = run(&[
        "build",
        "--code",
        "toric",
        "--size",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["data"]["n_qubits"], 8);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert!(out.status.success());
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
