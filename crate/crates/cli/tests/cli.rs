use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> (Option<i32>, Value) {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_semistab"))
        .current_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data"))
        .args(args)
        .output()
        .unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v)
}

#[test]
fn report_has_the_documented_fields() {
    let (code, v) = run(&["bounds", "delta0", "--n", "6", "--g", "2", "--m", "3"]);
    assert_eq!(code, Some(0));
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(
        keys,
        ["command", "inputs", "result", "timings", "witnesses"]
    );
    assert_eq!(v["timings"], Value::Null);
    assert_eq!(v["result"]["delta0"], 4);
    let (_, t) = run(&[
        "bounds",
        "delta0",
        "--n",
        "6",
        "--g",
        "2",
        "--m",
        "3",
        "--timings",
    ]);
    assert!(t["timings"]["total_ms"].is_number());
}

#[test]
fn zero_class_lies_on_the_secant_of_the_zero_divisor() {
    let (code, v) = run(&["secant", "member", "zero_class_f5.json", "--d", "1"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["result"]["member"], true);
    assert_eq!(v["witnesses"]["D"], serde_json::json!([]));
}

#[test]
fn full_space_search_stays_in_the_box() {
    let (code, v) = run(&["ext", "search", "subspace_q.json"]);
    assert_eq!(code, Some(0));
    let m = v["inputs"]["datum"]["m"].as_i64().unwrap();
    assert!(v["result"]["max_abs_coefficient"].as_i64().unwrap() <= m);
    let (_, det) = run(&["ext", "det", "class_f5.json"]);
    assert_eq!(det["result"]["det_test"], true);
}

#[test]
fn theorem2_reference_and_gate() {
    let args = [
        "bounds", "theorem2", "--n", "4", "--g", "2", "--m", "2", "--degF", "1", "--c1sq", "0",
    ];
    let (code, v) = run(&[&args[..], &["--k", "4"]].concat());
    assert_eq!(code, Some(0));
    assert_eq!(
        v["result"]["a"],
        "2.55258509299404568401799145468436420760110148862877"
    );
    let (code, v) = run(&[&args[..], &["--k", "2"]].concat());
    assert_eq!(code, Some(2));
    assert_eq!(v["result"]["status"], "not_applicable");
}

#[test]
fn prop1_with_explicit_twist() {
    let (code, v) = run(&[
        "ext",
        "prop1",
        "class_f5.json",
        "--L",
        r#"[{"point": "infinity", "mult": -2}]"#,
        "--M",
        r#"[{"point": "infinity", "mult": 2}]"#,
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(v["result"]["outcome"], "certified_semistable");
    // M' - L' must be equivalent to N
    let (code, _) = run(&[
        "ext",
        "prop1",
        "class_f5.json",
        "--L",
        "[]",
        "--M",
        r#"[{"point": "infinity", "mult": 3}]"#,
    ]);
    assert_eq!(code, Some(1));
}

#[test]
fn destabilizers() {
    let (code, v) = run(&["ext", "destab", "class_f5.json"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["result"]["semistable"], true);
    let (_, z) = run(&["ext", "destab", "zero_class_f5.json", "--max-degree", "0"]);
    assert_eq!(z["result"]["destabilized"], true);
    assert_eq!(z["witnesses"]["D"], serde_json::json!([]));
    // exhaustive enumeration needs a finite field
    let (code, _) = run(&["ext", "destab", "class_q.json"]);
    assert_eq!(code, Some(1));
}

#[test]
fn input_errors_exit_with_one() {
    for args in [
        &["curve", "validate", "bad_not_squarefree.json"][..],
        &["curve", "validate", "missing.json"],
        &[
            "rr",
            "basis",
            "elliptic_q.json",
            "--divisor",
            "[{\"point\": {\"x\": 1, \"y\": 1}, \"mult\": 1}]",
        ],
        &[
            "bounds", "theorem2", "--n", "3", "--g", "2", "--m", "2", "--degF", "1", "--c1sq", "0",
            "--k", "4",
        ],
        &["bounds", "m", "--n", "4"],
    ] {
        let (code, v) = run(args);
        assert_eq!(code, Some(1), "{args:?}");
        assert!(v["error"].is_string());
    }
}

#[test]
fn experiment_depends_on_the_seed_only() {
    let base = [
        "secant",
        "experiment",
        "genus2_f3.json",
        "--n",
        "4",
        "--dim",
        "4",
        "--trials",
        "4",
    ];
    let (_, a) = run(&[&base[..], &["--seed", "1"]].concat());
    let (_, b) = run(&[&base[..], &["--seed", "1", "--threads", "3"]].concat());
    let (_, c) = run(&[&base[..], &["--seed", "2"]].concat());
    assert_eq!(a, b);
    assert_ne!(a["witnesses"], c["witnesses"]);
    assert_eq!(a["result"]["soundness_violations"], 0);
}
