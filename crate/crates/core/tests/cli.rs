//! End-to-end tests of the command-line interface: output documents,
//! determinism, and the exit-code contract (0 ok, 2 budget, 3 invalid,
//! 4 verification failure).

use std::process::{Command, Output};

use fullorient::graph::{cycle_power, SimpleGraph};

fn fullorient(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fullorient"))
        .args(args)
        .env_remove("FULLORIENT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_round_trips_through_the_text_format() {
    let out = fullorient(&["gen", "--family", "cycle-power", "--n", "8", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed = SimpleGraph::from_text(&stdout(&out)).unwrap();
    assert_eq!(parsed, cycle_power(8, 2).unwrap());
}

#[test]
fn spectrum_json_for_c6_squared() {
    let out = fullorient(&[
        "spectrum",
        "--family",
        "cycle-power",
        "--n",
        "6",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["graph"]["family"], "cycle-power");
    assert_eq!(json["graph"]["params"]["n"], 6);
    assert_eq!(json["graph"]["params"]["k"], 2);
    assert_eq!(json["graph"]["n"], 6);
    assert_eq!(json["graph"]["m"], 12);
    assert_eq!(json["achievable"], serde_json::json!([4, 6, 7]));
    assert_eq!(json["gaps"], serde_json::json!([5]));
    assert_eq!(json["fully_orientable"], false);
    assert_eq!(json["d_max_formula"], 7);
    // auto picks orders here: 6! = 720 beats 2^12 subsets
    assert_eq!(json["strategy"], "LinearOrders");
}

#[test]
fn spectrum_json_is_deterministic_apart_from_elapsed_ms() {
    let args = ["spectrum", "--family", "complete", "--n", "5"];
    let a = fullorient(&args);
    let b = fullorient(&args);
    let strip = |s: &str| -> String {
        s.lines()
            .filter(|l| !l.contains("elapsed_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&stdout(&a)), strip(&stdout(&b)));
    let json: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(json["achievable"], serde_json::json!([6]));
}

#[test]
fn spectrum_csv_layout() {
    let out = fullorient(&[
        "spectrum", "--family", "complete", "--n", "4", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,count");
    assert_eq!(lines[1], "3,24");
    assert!(lines[2].starts_with("# d_min=3 d_max=3 fully_orientable=true"));
}

#[test]
fn spectrum_over_budget_exits_2() {
    let out = fullorient(&[
        "spectrum",
        "--family",
        "cycle-power",
        "--n",
        "12",
        "--k",
        "2",
        "--budget",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_of_c12_squared_fits_the_default_budget() {
    // 2^24 direction words, the largest run the default budget admits
    let out = fullorient(&[
        "spectrum",
        "--family",
        "cycle-power",
        "--n",
        "12",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        json["achievable"],
        serde_json::json!([7, 8, 9, 10, 11, 12, 13])
    );
    assert_eq!(json["fully_orientable"], true);
}

#[test]
fn budget_env_var_is_honored_and_flag_wins() {
    let base = [
        "spectrum",
        "--family",
        "cycle-power",
        "--n",
        "6",
        "--k",
        "2",
    ];
    let out = Command::new(env!("CARGO_BIN_EXE_fullorient"))
        .args(base)
        .env("FULLORIENT_BUDGET", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_fullorient"))
        .args(base)
        .args(["--budget", "5000"])
        .env("FULLORIENT_BUDGET", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn zero_budget_is_invalid() {
    let out = fullorient(&[
        "spectrum", "--family", "complete", "--n", "3", "--budget", "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_passes_for_nine() {
    let out = fullorient(&["verify", "--n", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let clauses = json["clauses"].as_array().unwrap();
    assert_eq!(clauses.len(), 6);
    assert!(clauses.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_rejects_six_with_exceptional_status() {
    let out = fullorient(&["verify", "--n", "6"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("n = 6 is the exception"));
}

#[test]
fn verify_large_n_skips_enumeration_clauses() {
    let out = fullorient(&["verify", "--n", "60"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let statuses: Vec<&str> = json["clauses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"skipped"));
    assert!(!statuses.contains(&"fail"));
}

#[test]
fn construct_emits_sequence_document_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot_dir = dir.path().join("dots");
    let out = fullorient(&[
        "construct",
        "--n",
        "8",
        "--dot-dir",
        dot_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["targets"], serde_json::json!([5, 6, 7, 8, 9]));
    assert_eq!(json["warnings"], serde_json::json!([]));
    assert_eq!(
        json["entries"][0]["dependent"],
        serde_json::json!(["1->7", "2->0", "2->3", "4->5", "6->7"])
    );
    for d in 5..=9 {
        let path = dot_dir.join(format!("d_{d}.dot"));
        assert!(path.exists(), "missing {path:?}");
    }
    let d5 = std::fs::read_to_string(dot_dir.join("d_5.dot")).unwrap();
    assert!(d5.starts_with("digraph {"));
    assert_eq!(d5.matches("[style=bold, class=dependent]").count(), 5);
}

#[test]
fn probe_alpha_table_for_squares() {
    let out = fullorient(&["probe-alpha", "--k", "2", "--n", "6..8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,status,fully_orientable,d_min,d_max,gaps,note");
    assert!(lines[1].starts_with("6,ok,false,4,7,5,"));
    assert!(lines[1].contains("K_{3(2)}"));
    assert!(lines[2].starts_with("7,ok,true,5,8,-"));
    assert!(lines[3].starts_with("8,ok,true,5,9,-"));
}

#[test]
fn probe_alpha_skips_rows_over_budget_and_exits_2_when_all_are() {
    let out = fullorient(&[
        "probe-alpha",
        "--k",
        "2",
        "--n",
        "13..14",
        "--budget",
        "4096",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // a mixed range still succeeds, with the oversized row marked skipped
    let out = fullorient(&[
        "probe-alpha",
        "--k",
        "2",
        "--n",
        "6..14",
        "--budget",
        "65536",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows[0]["status"], "ok");
    let skipped: Vec<u64> = rows
        .iter()
        .filter(|r| r["status"] == "skipped")
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert!(!skipped.is_empty());
    assert!(skipped.iter().all(|&n| n >= 9));
}

#[test]
fn probe_alpha_requires_k_at_least_2() {
    let out = fullorient(&["probe-alpha", "--k", "1", "--n", "8"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn survey_over_a_range() {
    let out = fullorient(&[
        "survey",
        "--family",
        "cycle-power",
        "--k",
        "2",
        "--n-range",
        "5..8",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,m,status,d_min,d_max,fully_orientable,gaps,pi_t,enumerated"
    );
    assert!(lines[1].starts_with("5,10,ok,6,6,true"));
    assert!(lines[2].starts_with("6,12,ok,4,7,false,5,4"));
    assert!(lines[4].starts_with("8,16,ok,5,9,true"));
}

#[test]
fn invalid_flags_and_families_exit_3() {
    assert_eq!(fullorient(&["spectrum"]).status.code(), Some(3));
    assert_eq!(
        fullorient(&["spectrum", "--family", "moebius", "--n", "5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        fullorient(&["gen", "--family", "cycle", "--n", "2"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        fullorient(&["probe-alpha", "--k", "2", "--n", "9..6"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        fullorient(&["spectrum", "--family", "cycle", "--n", "5", "--format", "dot"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn help_exits_0() {
    assert_eq!(fullorient(&["--help"]).status.code(), Some(0));
    assert_eq!(fullorient(&["spectrum", "--help"]).status.code(), Some(0));
}

#[test]
fn out_flag_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = fullorient(&[
        "spectrum",
        "--family",
        "complete",
        "--n",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["achievable"], serde_json::json!([3]));
}
