//! Integration tests driving the compiled binary.

use std::process::{Command, Output};

fn cfladder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfladder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn expand_csv_rows() {
    let out = cfladder(&[
        "expand", "--m", "2", "--power", "1", "--length", "4", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec![
            "n,b,p_prev,q_prev",
            "0,1,1,0",
            "1,3,1,1",
            "2,1,4,3",
            "3,5,5,4",
            "4,1,29,23"
        ]
    );
    // LF endings only.
    assert!(!text.contains('\r'));
}

#[test]
fn expand_length_zero_is_single_row() {
    let out = cfladder(&["expand", "--m", "2", "--power", "2", "--length", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("0,1,"));
}

#[test]
fn expand_rejects_cube_with_exit_2() {
    let out = cfladder(&["expand", "--m", "8", "--length", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cube"));
}

#[test]
fn expand_json_round_trips_to_csv_values() {
    let json_out = cfladder(&["expand", "--m", "5", "--length", "25", "--format", "json"]);
    assert!(json_out.status.success());
    let document: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_eq!(document["meta"]["m"], 5);
    assert_eq!(document["meta"]["power"], 1);
    assert_eq!(document["meta"]["length"], 25);
    let rows = document["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 26);

    let csv_out = cfladder(&["expand", "--m", "5", "--length", "25", "--format", "csv"]);
    let csv_text = stdout(&csv_out);
    for (line, row) in csv_text.lines().skip(1).zip(rows) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], row["n"].to_string());
        // Big integers are decimal strings in JSON; no precision loss.
        assert_eq!(fields[1], row["b"].as_str().unwrap());
        assert_eq!(fields[2], row["p_prev"].as_str().unwrap());
        assert_eq!(fields[3], row["q_prev"].as_str().unwrap());
    }
    // Convergent numerators exceed u64 well before index 100; spot-check
    // that a deep row still parses as an exact decimal string.
    let deep = cfladder(&["expand", "--m", "5", "--length", "120", "--format", "json"]);
    let document: serde_json::Value = serde_json::from_str(&stdout(&deep)).unwrap();
    let last = document["rows"].as_array().unwrap().last().unwrap().clone();
    let p: num_bigint::BigInt = last["p_prev"].as_str().unwrap().parse().unwrap();
    assert!(p > num_bigint::BigInt::from(u128::MAX));
}

#[test]
fn ladder_small_case() {
    let out = cfladder(&["ladder", "--m", "2", "--length", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k,r,s,t,b_n,B_k,r_bn_minus_s_Bk");
    assert_eq!(lines[1], "1,2,1,2,1,3,1,1");
    assert_eq!(lines[2], "2,3,2,1,0,1,2,0");
    assert_eq!(lines[3], "3,4,1,2,0,5,2,1");
    assert_eq!(lines.len(), 4);
    assert!(stderr(&out).contains("connections: 3"));
}

#[test]
fn ladder_m6_is_nonempty_at_length_100() {
    let out = cfladder(&["ladder", "--m", "6", "--length", "100"]);
    assert!(out.status.success());
    let rows = stdout(&out).lines().count() - 1;
    assert!(rows > 0);
    assert!(stderr(&out).contains(&format!("connections: {rows}")));
}

#[test]
fn ladder_json_meta_counts_rows() {
    let out = cfladder(&["ladder", "--m", "6", "--length", "40", "--format", "json"]);
    assert!(out.status.success());
    let document: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = document["rows"].as_array().unwrap();
    assert_eq!(document["meta"]["connections"], rows.len() as u64);
    assert_eq!(document["meta"]["m"], 6);
}

#[test]
fn verify_passes_and_reports() {
    let out = cfladder(&["verify", "--m", "2", "--length", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().starts_with("status,check"));
    assert!(text.contains("PASS,complete_quotient_identity_e1"));
    assert!(text.contains("PASS,middle_zero"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_rejects_cube() {
    let out = cfladder(&["verify", "--m", "27", "--length", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stats_table_and_expected_column() {
    let out = cfladder(&[
        "stats", "--m", "2", "--power", "1", "--length", "200", "--cutoff", "10",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,count,frequency,expected,deviation");
    // k = 1..=10 plus the tail row.
    assert_eq!(lines.len(), 12);
    assert!(lines[1].starts_with("1,"));
    let expected: f64 = lines[1].split(',').nth(3).unwrap().parse().unwrap();
    assert!((expected - 0.415037).abs() < 1e-6);
    assert!(lines[11].starts_with("tail,"));
    assert!(stderr(&out).contains("max_deviation"));
}

#[test]
fn stats_empty_sample_is_exit_1() {
    let out = cfladder(&["stats", "--m", "2", "--length", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("empty sample"));
}

#[test]
fn figure_invalid_id_is_exit_2() {
    let out = cfladder(&["figure", "--which", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn figure_one_lists_rungs_and_connections() {
    let out = cfladder(&["figure", "--which", "1", "--length", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "record,side,index,quotient,n,k"
    );
    assert!(text.contains("rung,cbrt_m,1,3,,"));
    assert!(text.contains("rung,cbrt_m2,1,1,,"));
    assert!(text.contains("connection,,,,2,3"));
    assert!(text.contains("connection,,,,3,4"));
}

#[test]
fn identical_inputs_identical_bytes() {
    let first = cfladder(&["ladder", "--m", "10", "--length", "30", "--format", "json"]);
    let second = cfladder(&["ladder", "--m", "10", "--length", "30", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);
    let third = cfladder(&["stats", "--m", "3", "--length", "50", "--cutoff", "7"]);
    let fourth = cfladder(&["stats", "--m", "3", "--length", "50", "--cutoff", "7"]);
    assert_eq!(third.stdout, fourth.stdout);
}

#[test]
fn out_flag_writes_file_and_keeps_summary_on_stderr() {
    let dir = std::env::temp_dir().join("cfladder-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ladder.csv");
    let out = cfladder(&[
        "ladder",
        "--m",
        "2",
        "--length",
        "12",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("connections:"));
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("n,k,r,s,t,"));
    std::fs::remove_file(&path).ok();
}
