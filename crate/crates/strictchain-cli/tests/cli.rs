use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strictchain")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["spectrum", "--n", "3", "--alpha", "2"]).trim(), r#"{"eigenvalues":["1","7/16"]}"#);
    assert_eq!(stdout(&["measure", "--n", "3", "--alpha", "2"]).trim(), r#"{"[3]":"8/9","[2,1]":"1/9"}"#);
    assert_eq!(stdout(&["enumerate", "--n", "0"]).trim(), "[[]]");
}

#[test]
fn csv_output() {
    let csv = stdout(&["matrix", "--n", "3", "--alpha", "2", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines, vec![r#",[3],"[2,1]""#, "[3],15/16,1/16", r#""[2,1]",1/2,1/2"#]);
    let csv = stdout(&["moments", "--n", "3", "--exact", "--format", "csv"]);
    assert_eq!(csv.lines().nth(1), Some("q2,25/27"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["measure", "--n", "3", "--alpha=-1"]).status.code(), Some(2));
    assert_eq!(run(&["matrix", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let ok = run(&["verify", "--suite", "sl2", "--max-weight", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn simulation_is_seeded_json_lines() {
    let args = ["simulate", "--n", "10", "--steps", "50", "--seed", "3", "--moments", "2"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert_eq!(a.lines().count(), 51);
    for (i, line) in a.lines().enumerate() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["step"], i);
        let parts: Vec<u64> = v["state"].as_array().unwrap().iter().map(|p| p.as_u64().unwrap()).collect();
        assert_eq!(parts.iter().sum::<u64>(), 10);
        assert!(parts.windows(2).all(|w| w[0] > w[1]));
        assert!(v["moments"]["q4"].as_f64().unwrap() <= v["moments"]["q2"].as_f64().unwrap());
    }
    let fixed = stdout(&["simulate", "--n", "3", "--steps", "0", "--start", "2,1"]);
    assert_eq!(fixed.trim(), r#"{"step":0,"state":[2,1]}"#);
}

#[test]
fn thread_count_does_not_change_results() {
    let one = stdout(&["--threads", "1", "matrix", "--n", "7", "--alpha", "1/2"]);
    let many = stdout(&["--threads", "4", "matrix", "--n", "7", "--alpha", "1/2"]);
    assert_eq!(one, many);
    let env = Command::new(env!("CARGO_BIN_EXE_strictchain"))
        .env("STRICTCHAIN_THREADS", "2")
        .args(["moments", "--n", "6", "--steps", "16000", "--seed", "5"])
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(env.stdout).unwrap(),
        stdout(&["moments", "--n", "6", "--steps", "16000", "--seed", "5"])
    );
}
