use std::process::{Command, Output};

use serde_json::Value;

fn qec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qec"))
        .args(args)
        .env_remove("QEC_Q")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

const HARD_MATRIX: &str = r#"{"kind":"matrix","entries":[["-3*z^-3 - 3*z^-2 - 18*z^-1 - 5/6*z - 1/3*z^2 - 2*z^3","6*z^-2 + 2/3*z^2"],["9/2*z^-4 + 9/2*z^-3 + 30*z^-2 + 3*z^-1 + 77/4 + 1/2*z + 3*z^2","-9*z^-3 - 6*z^-1 - z"]]}"#;

#[test]
fn eval_substitutes_q() {
    let o = qec(&["eval", "s*z"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2*z*s");
    assert_eq!(stdout(&qec(&["--q", "3", "eval", "s*z"])), "3*z*s");
    assert_eq!(stdout(&qec(&["eval", "(s - q)*(s - 1)"])), "2 - 3*s + s^2");
}

#[test]
fn environment_sets_q() {
    let o = Command::new(env!("CARGO_BIN_EXE_qec"))
        .args(["eval", "s*z"])
        .env("QEC_Q", "-1/2")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "-1/2*z*s");
}

#[test]
fn line_bundle_cohomology() {
    let v = json(&qec(&["coh", r#"{"kind":"line","c":"1","m":3}"#]));
    assert_eq!(
        (v["h0"].as_u64(), v["h1"].as_u64(), v["chi"].as_i64()),
        (Some(0), Some(3), Some(-3))
    );
    let v = json(&qec(&["coh", r#"{"kind":"line","c":"4","m":0}"#]));
    assert_eq!((v["h0"].as_u64(), v["h1"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn json_output_is_versioned() {
    let v = json(&qec(&[
        "--json",
        "euler",
        r#"{"kind":"line","c":"1","m":3}"#,
        r#"{"kind":"torsion","blocks":[{"lambda":"1","size":2}]}"#,
    ]));
    assert_eq!(v["version"], 1);
    assert_eq!(v["command"], "euler");
    assert_eq!(v["result"]["chi"], -6);
}

#[test]
fn division_witness() {
    let o = qec(&["div", "--mode", "sigma", "s^3 + z", "s - z"]);
    assert!(o.status.success());
    let v = json(&qec(&[
        "--json",
        "div",
        "--mode",
        "z",
        "--side",
        "bottom",
        "s^3*z + 1",
        "s*z - 1",
    ]));
    assert!(v["result"]["rem"].is_string());
    assert_eq!(
        qec(&["div", "--mode", "sigma", "s", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn module_operations() {
    let good = r#"{"kind":"good","p":"s^2-(q+1)*s+q"}"#;
    let info = json(&qec(&["mod", "info", r#"{"kind":"good","p":"z-s-s^-1"}"#]));
    assert_eq!(
        (info["rank_a"].as_u64(), info["rank_s"].as_u64()),
        (Some(2), Some(1))
    );
    let dual = json(&qec(&["dual", good]));
    assert_eq!(dual["kind"], "good");
    let t = json(&qec(&["tensor", good, r#"{"kind":"line","c":"3","m":1}"#]));
    assert_eq!(t["kind"], "matrix");
    let h = json(&qec(&[
        "hom",
        r#"{"kind":"line","c":"3","m":1}"#,
        r#"{"kind":"line","c":"1","m":4}"#,
    ]));
    assert_eq!(
        (h["kind"].as_str(), h["m"].as_i64()),
        (Some("line"), Some(3))
    );
}

#[test]
fn picard_arithmetic() {
    assert_eq!(stdout(&qec(&["pic", "inv", "3/2", "-4"])), "c=4/3 m=4");
    assert_eq!(stdout(&qec(&["pic", "eq", "3", "1", "12", "1"])), "true");
    assert_eq!(stdout(&qec(&["pic", "eq", "3", "1", "3", "2"])), "false");
    assert_eq!(
        stdout(&qec(&["pic", "mul", "3", "1", "-1/6", "-1"])),
        "c=-1 m=0"
    );
}

#[test]
fn verify_is_reproducible() {
    let args = [
        "verify",
        "euler_symmetry",
        "--cases",
        "100",
        "--seed",
        "7",
        "--json",
    ];
    let a = qec(&args);
    assert!(a.status.success());
    let v = json(&a);
    assert_eq!(v["result"]["passed"], 100);
    assert_eq!(v["result"]["failures"].as_array().map(Vec::len), Some(0));
    assert_eq!(a.stdout, qec(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(qec(&["eval", "s*("]).status.code(), Some(2));
    assert_eq!(qec(&["--q", "1", "eval", "s"]).status.code(), Some(2));
    assert_eq!(qec(&["verify", "no_such_suite"]).status.code(), Some(2));
    assert_eq!(qec(&["coh", r#"{"kind":"cube"}"#]).status.code(), Some(2));
    assert_eq!(qec(&["frobnicate"]).status.code(), Some(2));

    let tight = ["--bound-sigma", "0", "--bound-z", "0", "--window", "0"];
    let loose = qec(&[&tight[..], &["coh", HARD_MATRIX]].concat());
    assert_eq!(loose.status.code(), Some(0));
    assert_eq!(json(&loose)["certified"], false);
    let strict = qec(&[&tight[..], &["--strict", "coh", HARD_MATRIX]].concat());
    assert_eq!(strict.status.code(), Some(1));
    let v = json(&qec(&["coh", HARD_MATRIX]));
    assert_eq!(
        (v["certified"].as_bool(), v["chi"].as_i64()),
        (Some(true), Some(-6))
    );
}
