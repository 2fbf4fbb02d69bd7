use std::process::{Command, Output};

fn evcom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evcom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn analyze_long_element() {
    let o = evcom(&["analyze", "--sigma", "[5,4,3,2,1]", "--q", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("ec_degree: 7"));
}

#[test]
fn analyze_json_matches_text() {
    let o = evcom(&[
        "analyze", "--sigma", "(1 2)", "--n", "2", "--q", "2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["schema"], "evcom/1");
    assert_eq!(doc["nilpotency_degree"], 2);
    assert!(doc["ec_degree"].is_null());
    assert_eq!(doc["classification"][1], "transposition_1n");
    for key in ["identity", "chain", "oracle", "warnings", "timing_ms"] {
        assert!(doc.get(key).is_some(), "{key}");
    }
    let text = evcom(&["analyze", "--sigma", "(1 2)", "--n", "2", "--q", "2"]);
    assert!(stdout(&text).contains("nilpotency_degree: 2"));
}

#[test]
fn analyze_rejects_bad_input() {
    let o = evcom(&["analyze", "--sigma", "[2,2,1]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("repeated image 2"));
    let o = evcom(&["analyze", "--sigma", "[2,1]", "--q", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--q"));
    let o = evcom(&["analyze", "--sigma", "(1 2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--sigma"));
}

#[test]
fn analyze_without_seeds_agrees() {
    let o = evcom(&["analyze", "--sigma", "[3,2,1]", "--seed-latyshev", "off"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ec_degree: 4"));
}

#[test]
fn lift_output() {
    let o = evcom(&["lift", "--sigma", "[3,2,1]", "--i", "1"]);
    assert!(stdout(&o).contains("[4,3,1,2]"));
    let o = evcom(&["lift", "--sigma", "[3,2,1]", "--i", "4"]);
    assert!(stdout(&o).contains("[3,2,1,4]"));
    let o = evcom(&["lift", "--sigma", "[2,1]"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = evcom(&["lift", "--sigma", "[2,1]", "--i", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_census_and_queries() {
    let o = evcom(&[
        "oracle", "--sigma", "(1 2)", "--n", "2", "--q", "-1", "--k", "3",
    ]);
    assert!(stdout(&o).contains("all components dead"));
    let o = evcom(&["oracle", "--sigma", "[3,2,1]", "--k", "3"]);
    assert!(stdout(&o).contains("3 components of size 2; |H_3| = 2"));
    let o = evcom(&["oracle", "--sigma", "(1 5)", "--n", "5", "--k", "6"]);
    assert!(stdout(&o).contains("|H_6| = 720"));
    let o = evcom(&[
        "oracle",
        "--sigma",
        "[3,2,1]",
        "--k",
        "3",
        "--query",
        "[1,2,3];[2,1,3]",
    ]);
    assert!(stdout(&o).contains("ABSENT"));
    let o = evcom(&[
        "oracle",
        "--sigma",
        "[2,1]",
        "--q",
        "2",
        "--k",
        "2",
        "--query",
        "[1,2];[2,1]",
    ]);
    assert!(stdout(&o).contains("ZERO"));
}

#[test]
fn oracle_cap_exit_code() {
    let o = evcom(&["oracle", "--sigma", "[3,2,1]", "--k", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap of 8"));
}

#[test]
fn verify_paper_skip_oracle() {
    let o = evcom(&["verify-paper", "--max-n", "3", "--skip-oracle"]);
    let out = stdout(&o);
    assert!(out.contains("SKIPPED"));
    assert_eq!(o.status.code(), Some(0), "{out}");
}

#[test]
fn verify_paper_reports_block_swap() {
    // [3,4,1,2] needs degree 6 in S_4, one above the expected ceiling
    let o = evcom(&["verify-paper", "--max-n", "4", "--skip-oracle"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1));
    assert!(out.contains("[3,4,1,2]:6"), "{out}");
}
