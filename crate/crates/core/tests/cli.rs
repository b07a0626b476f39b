use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qubit-thermal"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

const THIRDS: &str = "0.3333333333333333,0.3333333333333333,0.3333333333333333";

#[test]
fn output_is_byte_identical_across_runs() {
    let args = [
        "optimize",
        "--diag",
        THIRDS,
        "--t-min",
        "0.5",
        "--t-max",
        "2",
        "--t-points",
        "40",
    ];
    let (code, a) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(run(&args).1, a);

    let args = [
        "verify-hypothesis",
        "--diag",
        THIRDS,
        "--beta",
        "1",
        "--restarts",
        "4",
        "--seed",
        "7",
    ];
    let (code, a) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(run(&args).1, a);
}

#[test]
fn config_hash_tracks_configuration() {
    let hash = |args: &[&str]| run(args).1.lines().next().unwrap().to_string();
    let a = hash(&["phase-diagram", "--grid-max", "2"]);
    let b = hash(&["phase-diagram", "--grid-max", "2", "--class", "fm"]);
    assert!(a.starts_with("# config-hash: "));
    assert_ne!(a, b);
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("qubit-thermal-{}.json", std::process::id()));
    let (code, stdout) = run(&[
        "boundary",
        "--diag",
        THIRDS,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!((v["t_c"].as_f64().unwrap() - 0.8168).abs() < 1e-3);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["optimize", "--diag", THIRDS, "--t-min", "3", "--t-max", "1"]).0,
        2
    );
    assert_eq!(run(&["canonicalize", "--coupling", "1,2,3"]).0, 2);
    assert_eq!(run(&["measure", "--diag", THIRDS]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn measure_reports_entanglement() {
    let (code, out) = run(&["measure", "--diag", THIRDS, "--temperature", "0.5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["negativity"].as_f64().unwrap() > 0.0);
    assert_eq!(v["necessary_condition"], true);
}
