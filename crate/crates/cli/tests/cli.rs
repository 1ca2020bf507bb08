use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const HEADER: &str = "HRDS 1\np=2 e=1 n=2 k=2\nmod=1,1,1\n";

fn hermrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermrank"))
        .args(args)
        .output()
        .expect("spawn hermrank")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = hermrank(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn udelta_file(dir: &Path) -> String {
    let path = dir.join("u.hrds").display().to_string();
    let out = hermrank(&[
        "construct",
        "udelta",
        "--q",
        "2",
        "--delta",
        "2",
        "--out",
        &path,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn maximal_udelta_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let file = udelta_file(dir.path());
    let out = hermrank(&["verify", "--file", &file, "--k", "2", "--maximal"]);
    assert_eq!(code(&out), 0);
    let v = json(&["verify", "--file", &file, "--k", "2", "--maximal"]);
    assert_eq!(v["result"]["size"], 5);
    assert_eq!(v["result"]["maximal"], true);
}

#[test]
fn bound_table_reports_six() {
    let out = hermrank(&["bound", "--q", "2", "--n", "2", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("certified_ceiling = 6"), "{text}");
    let v = json(&["bound", "--q", "2", "--n", "2", "--k", "2"]);
    assert_eq!(v["result"]["certified_ceiling"], 6);
}

#[test]
fn rank_one_difference_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "bad.hrds",
        &format!("{HEADER}0 0 0 0\n1 0 0 0\n"),
    );
    let out = hermrank(&["verify", "--file", &file]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("members 0 and 1"), "{err}");
}

#[test]
fn non_maximal_set_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "zero.hrds", &format!("{HEADER}0 0 0 0\n"));
    assert_eq!(code(&hermrank(&["verify", "--file", &file])), 0);
    assert_eq!(
        code(&hermrank(&["verify", "--file", &file, "--maximal"])),
        1
    );
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = [
        (
            "magic.hrds",
            "HRDS 9\np=2 e=1 n=2 k=2\nmod=1,1,1\n".to_string(),
        ),
        ("range.hrds", format!("{HEADER}0 0 0 0\n0 4 4 0\n")),
        ("shape.hrds", format!("{HEADER}0 0 0\n")),
        (
            "reducible.hrds",
            "HRDS 1\np=2 e=1 n=2 k=2\nmod=1,0,1\n".to_string(),
        ),
        ("nonherm.hrds", format!("{HEADER}0 2 2 0\n")),
    ];
    for (name, text) in corpus {
        let file = write(dir.path(), name, &text);
        let out = hermrank(&["verify", "--file", &file]);
        assert_eq!(code(&out), 2, "{name}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    let missing = dir.path().join("nope.hrds").display().to_string();
    assert_eq!(code(&hermrank(&["verify", "--file", &missing])), 2);
    assert_eq!(
        code(&hermrank(&["bound", "--q", "6", "--n", "2", "--k", "2"])),
        2
    );
    assert_eq!(code(&hermrank(&["eigen", "--q", "2"])), 2);
    assert_eq!(
        code(&hermrank(&[
            "construct",
            "udelta",
            "--q",
            "2",
            "--delta",
            "3"
        ])),
        2
    );
}

#[test]
fn out_of_range_entry_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "range.hrds",
        &format!("{HEADER}0 0 0 0\n0 4 4 0\n"),
    );
    let out = hermrank(&["distribution", "--file", &file]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5") && err.contains("matrix 2"), "{err}");
}

#[test]
fn spectrum_budget_exits_three() {
    let out = hermrank(&[
        "search", "spectrum", "--q", "2", "--n", "3", "--k", "2", "--budget", "10",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn spectrum_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let wd = dir.path().join("w").display().to_string();
    let v = json(&[
        "search",
        "spectrum",
        "--q",
        "2",
        "--n",
        "2",
        "--k",
        "2",
        "--witness-dir",
        &wd,
    ]);
    assert_eq!(v["result"]["sizes"], serde_json::json!([4, 5]));
    assert_eq!(v["result"]["complete"], true);
    for f in v["result"]["witness_files"].as_array().unwrap() {
        let f = f.as_str().unwrap();
        let out = hermrank(&["verify", "--file", f, "--maximal"]);
        assert_eq!(code(&out), 0, "{f}");
    }
}

#[test]
fn construct_stdout_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["construct", "udelta", "--q", "3", "--delta", "2"],
        vec!["construct", "trace-gram", "--q", "2", "--n", "3"],
        vec!["construct", "lift-points", "--q", "2", "--n", "3"],
        vec![
            "construct",
            "lift-desarguesian",
            "--q",
            "2",
            "--n",
            "4",
            "--r",
            "2",
        ],
    ] {
        let printed = stdout(&hermrank(&args));
        let path = dir.path().join("c.hrds").display().to_string();
        let mut with_out = args.clone();
        with_out.extend(["--out", path.as_str()]);
        assert_eq!(code(&hermrank(&with_out)), 0, "{args:?}");
        assert_eq!(std::fs::read_to_string(&path).unwrap(), printed, "{args:?}");
        assert_eq!(code(&hermrank(&["verify", "--file", &path])), 0, "{args:?}");
    }
}

#[test]
fn text_and_json_agree() {
    let v = json(&["eigen", "--q", "2", "--n", "2"]);
    let rows = v["result"]["P"].as_array().unwrap();
    assert_eq!(rows[2], serde_json::json!([10, 2, -2]));
    let text = stdout(&hermrank(&["eigen", "--q", "2", "--n", "2"]));
    assert!(text.contains("10  2 -2"), "{text}");
    assert_eq!(v["parameters"]["q"], 2);
    assert!(!v["provenance"].as_array().unwrap().is_empty());
}

#[test]
fn threads_flag_is_accepted() {
    let out = hermrank(&[
        "--threads",
        "1",
        "search",
        "spectrum",
        "--q",
        "2",
        "--n",
        "2",
        "--k",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        code(&hermrank(&[
            "--threads",
            "0",
            "eigen",
            "--q",
            "2",
            "--n",
            "2"
        ])),
        2
    );
}
