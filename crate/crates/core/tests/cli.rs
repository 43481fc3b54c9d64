use std::process::{Command, Output};

use strength::cli::Envelope;

fn strength(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strength"))
        .args(args)
        .output()
        .expect("run strength")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn slrk_prints_value() {
    let o = strength(&["slrk", "--d", "5", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn bound_prints_value() {
    let o = strength(&["bound", "--d", "5", "--n", "3", "--degs", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "53\n");
}

#[test]
fn theta_json_report_carries_the_m3_tie() {
    let o = strength(&["verify", "theta", "--m-max", "9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let env: Envelope = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(env.check.as_deref(), Some("theta"));
    assert!(!env.passed);
    assert_eq!(env.counterexamples.len(), 1);
    assert_eq!(env.counterexamples[0]["params"]["m"], 3);
    assert_eq!(env.elapsed_ms, None);
}

#[test]
fn json_round_trips() {
    for args in [
        &["f", "--d", "6", "--n", "4", "--degs", "3,3", "--format", "json"][..],
        &["abcde", "--d", "5", "--n", "6", "--l1", "4", "--l2", "1", "--format", "json"],
        &["verify", "chain", "--d-max", "7", "--n-max", "6", "--format", "json"],
        &["oracle", "join-dim", "--d", "5", "--n", "3", "--degs", "1,2", "--format", "json"],
    ] {
        let o = strength(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let env: Envelope = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&env).unwrap() + "\n";
        assert_eq!(text, again, "{args:?}");
        let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["params", "result", "passed", "counterexamples", "seed", "elapsed_ms"] {
            assert!(raw.get(key).is_some(), "missing {key} in {args:?}");
        }
    }
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = [
        "oracle", "cross-check", "--d", "5", "--n", "4", "--max-r", "2", "--seed", "77", "--format", "json",
    ];
    let a = strength(&args);
    let b = strength(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env: Envelope = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(env.seed, Some(77));
    assert_eq!(env.params["p"], 2147483647u64);
    assert_eq!(env.params["trials"], 3);
}

#[test]
fn timing_flag_fills_elapsed() {
    let o = strength(&["verify", "identity", "--format", "json", "--timing"]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(env.elapsed_ms.is_some());
}

#[test]
fn csv_output() {
    let o = strength(&["oracle", "cross-check", "--d", "5", "--n", "3", "--max-r", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("d,n,degs,formula_bound,hl_value,oracle_value,equality,seed")
    );
    assert_eq!(lines.count(), 5);

    let o = strength(&["ci-dim", "--n", "3", "--degs", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "query,degs,n,result\nci-dim,2,3,9\n");
}

#[test]
fn output_file() {
    let dir = tempdir();
    let path = dir.join("report.json");
    let o = strength(&["slrk", "--d", "6", "--n", "4", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let env: Envelope = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(env.result, 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(strength(&["nope"]).status.code(), Some(2));
    assert_eq!(strength(&["bound", "--d", "5", "--n", "3", "--degs", "1,x"]).status.code(), Some(2));
    assert_eq!(strength(&["bound", "--d", "5", "--n", "2", "--degs", "1,1"]).status.code(), Some(2));
    assert_eq!(strength(&["verify", "theta", "--m-max", "9"]).status.code(), Some(1));
    assert_eq!(strength(&["verify", "minimality", "--d-max", "8", "--n-max", "8"]).status.code(), Some(0));
    assert_eq!(strength(&["--help"]).status.code(), Some(0));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("strength-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
