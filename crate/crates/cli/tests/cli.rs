use std::process::{Command, Output};

use serde_json::Value;

fn adlv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adlv"))
        .args(args)
        .env_remove("ADLV_THREADS")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Value {
    let out = adlv(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Exit code and the parsed error object from stderr.
fn fails(args: &[&str]) -> (i32, Value) {
    let out = adlv(args);
    assert!(
        out.stdout.is_empty() || args[0] == "verify",
        "{args:?} wrote a report"
    );
    let e: Value = serde_json::from_slice(&out.stderr).unwrap_or(Value::Null);
    (out.status.code().unwrap(), e["error"].clone())
}

#[test]
fn adm_report() {
    let v = ok(&["adm", "--group", "A1_sc", "--mu", "1"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["size"], 5);
    assert_eq!(v["tau"]["lambda"], serde_json::json!([0]));
    assert_eq!(v["maximal"].as_array().unwrap().len(), 2);
    assert!(v.get("elements").is_none());
    let e = ok(&["adm", "--group", "A1_sc", "--mu", "1", "--emit", "elements"]);
    assert_eq!(e["elements"].as_array().unwrap().len(), 5);
}

#[test]
fn adm_matches_golden_file() {
    let out = adlv(&[
        "adm", "--group", "A2_sc", "--mu", "1,0", "--emit", "elements", "--level", "0",
    ]);
    let golden = include_str!("golden/adm_a2_quasi_minuscule.json");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn job_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    std::fs::write(&job, r#"{"group": "GL2", "mu": [1, 1], "emit": "summary"}"#).unwrap();
    let out = dir.path().join("report.json");
    let o = adlv(&[
        "adm",
        "--job",
        job.to_str().unwrap(),
        "--mu",
        "1,0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["mu"], serde_json::json!([1, 0]));
    assert_eq!(v["size"], 3);
    let inline = ok(&["adm", "--spec", r#"{"group": "A1_sc", "mu": [1]}"#]);
    assert_eq!(inline["size"], 5);
}

#[test]
fn inline_datum() {
    let g = r#"{"rank": 1, "simple_roots": [[2]], "simple_coroots": [[1]]}"#;
    let v = ok(&["adm", "--group", g, "--mu", "1"]);
    assert_eq!(v["group"], "inline");
    assert_eq!(v["size"], 5);
    let bad = r#"{"rank": 1, "simple_roots": [[1]], "simple_coroots": [["1/2"]]}"#;
    let (code, e) = fails(&["adm", "--group", bad, "--mu", "1"]);
    assert_eq!((code, e["kind"].as_str()), (1, Some("NonIntegralCartan")));
}

#[test]
fn straight_reports() {
    let v = ok(&["straight", "--group", "A1_sc", "--w", "1"]);
    assert_eq!(v["straight"], true);
    assert_eq!(v["fundamental"], true);
    assert_eq!(v["newton_vector"], serde_json::json!(["1"]));
    let r = ok(&["straight", "--group", "A2_sc", "--w", "word:0,1,2,1"]);
    assert!(r["reduction"]["length"].as_u64().unwrap() <= 4);
    let a = ok(&["straight", "--group", "A1_sc", "--mu", "1"]);
    assert_eq!(a["source"], "adm");
    let counts: u64 = a["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["count"].as_u64().unwrap())
        .sum();
    assert_eq!(counts, 3);
    let b = ok(&[
        "straight", "--group", "G2_sc", "--length", "4", "--emit", "elements",
    ]);
    assert!(b["classes"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["elements"].is_array()));
}

#[test]
fn bgmu_and_pi0() {
    let b = ok(&["bgmu", "--group", "A1_sc", "--mu", "1"]);
    let el = b["elements"].as_array().unwrap();
    assert_eq!(el.len(), 2);
    assert_eq!(el[0]["basic"], true);
    assert_eq!(el[1]["maximal"], true);
    let p = ok(&["pi0", "--group", "A1_sc", "--mu", "1"]);
    assert_eq!(p["case"], "basic");
    assert_eq!(p["marker"], "exact");
    assert_eq!(p["group"]["invariant_factors"], serde_json::json!([]));
    let n = ok(&["pi0", "--group", "A1_sc", "--mu", "1", "--b", "maximal"]);
    assert_eq!(n["case"], "nonbasic-residually-split");
    assert_eq!(n["marker"], "upper_bound (surjection domain)");
    let strata = n["strata"].as_array().unwrap();
    assert_eq!(strata.len(), 2);
    assert!(strata
        .iter()
        .all(|s| s["pi1M"]["invariant_factors"] == serde_json::json!([0])));
    let by_tag = ok(&[
        "pi0",
        "--group",
        "A1_sc",
        "--mu",
        "1",
        "--b",
        r#"{"nu": ["1"], "kappa": []}"#,
    ]);
    assert_eq!(by_tag["strata"], n["strata"]);
    let u = ok(&[
        "pi0", "--group", "A1_ad", "--sigma", "inner", "--mu", "2", "--b", "maximal",
    ]);
    assert_eq!(u["case"], "unsupported");
}

#[test]
fn pic_certificate() {
    let v = ok(&["pic-cert", "--group", "A1_sc", "--w", "1", "--q", "3"]);
    assert_eq!(v["invertible"], true);
    assert_eq!(v["q"], 3);
    // x sigma w^-1 = 3 on Pic, so L = (1, 1) with difference (2, 2)
    assert_eq!(v["operator"], serde_json::json!([["3", "0"], ["0", "3"]]));
    assert_eq!(v["certificate"], serde_json::json!(["1", "1"]));
    assert_eq!(v["difference"], serde_json::json!(["2", "2"]));
    let x = ok(&["pic-cert", "--group", "A1_sc", "--w", "1", "--x", "-1"]);
    assert_eq!(x["x"]["lambda"], serde_json::json!([-1]));
}

#[test]
fn presets_listing() {
    let v = ok(&["presets"]);
    let names: Vec<&str> = v["presets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"GU_odd(2)"));
    let gu = v["presets"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["name"] == "GU_odd(2)")
        .unwrap();
    assert_eq!(gu["w0_order"], 8);
}

#[test]
fn verify_single_suite() {
    let out = adlv(&["verify", "--suites", "1,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn unknown_preset() {
    let (code, e) = fails(&["adm", "--group", "E8_sc", "--mu", "1"]);
    assert_eq!(code, 1);
    assert_eq!(e["kind"], "UnknownPreset");
}

#[test]
fn schema_errors_carry_pointers() {
    let cases: [(&[&str], &str); 9] = [
        (
            &[
                "bgmu",
                "--spec",
                r#"{"command": "adm", "group": "A1_sc", "mu": [1]}"#,
            ],
            "/command",
        ),
        (&["adm", "--group", "A1_sc", "--mu", "1,x"], "/mu/1"),
        (&["adm", "--group", "A1_sc"], "/mu"),
        (&["adm", "--mu", "1"], "/group"),
        (
            &[
                "adm",
                "--spec",
                r#"{"group": "A1_sc", "mu": [1], "colour": 3}"#,
            ],
            "/colour",
        ),
        (
            &["adm", "--group", "A1_sc", "--mu", "1", "--budget", "0"],
            "/budget",
        ),
        (
            &["adm", "--group", "A1_sc", "--mu", "1", "--emit", "all"],
            "/emit",
        ),
        (
            &["adm", "--group", "A1_sc", "--sigma", "flip", "--mu", "1"],
            "/sigma",
        ),
        (&["adm", "--spec", "{not json"], ""),
    ];
    for (args, pointer) in cases {
        let (code, e) = fails(args);
        assert_eq!(code, 1, "{args:?}");
        assert_eq!(e["kind"], "SchemaError", "{args:?}");
        assert_eq!(e["pointer"], pointer, "{args:?}");
    }
}

#[test]
fn hypothesis_violations_exit_2() {
    // basic class with central mu
    let (code, e) = fails(&["pi0", "--group", "A1_sc", "--mu", "0"]);
    assert_eq!((code, e["kind"].as_str()), (2, Some("HypothesisViolated")));
    // K not stable under the swap
    let (code, e) = fails(&[
        "pi0", "--group", "A1xA1_sc", "--sigma", "swap", "--mu", "1,1", "--level", "1",
    ]);
    assert_eq!((code, e["kind"].as_str()), (2, Some("HypothesisViolated")));
}

#[test]
fn budgets_exit_3() {
    let (code, e) = fails(&["adm", "--group", "A2_sc", "--mu", "1,1", "--budget", "3"]);
    assert_eq!((code, e["kind"].as_str()), (3, Some("BudgetExceeded")));
    let out = adlv(&["verify", "--suites", "9", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(
        v["suites"][0]["error_kinds"],
        serde_json::json!(["BudgetExceeded"])
    );
}

#[test]
fn other_core_errors_exit_1() {
    let cases: [(&[&str], &str); 7] = [
        (
            &["pi0", "--group", "A1_sc", "--mu", "1", "--b", "7"],
            "TagNotInBGMu",
        ),
        (
            &["pic-cert", "--group", "A1_sc", "--w", "word:0"],
            "NotStraight",
        ),
        (
            &["straight", "--group", "A1_sc", "--w", "word:9"],
            "DatumMismatch",
        ),
        (
            &["straight", "--group", "A1_sc", "--w", "1,2"],
            "DatumMismatch",
        ),
        (
            &["adm", "--group", "A1_sc", "--mu", "1", "--q", "1"],
            "InvalidFrobenius",
        ),
        (
            &["adm", "--group", "A1_sc", "--mu", "1", "--level", "0,1"],
            "InfiniteParabolic",
        ),
        (
            &[
                "adm",
                "--group",
                "A1_sc",
                "--mu",
                "1",
                "--sigma",
                r#"{"lattice": [[2]]}"#,
            ],
            "InvalidFrobenius",
        ),
    ];
    for (args, kind) in cases {
        let (code, e) = fails(args);
        assert_eq!((code, e["kind"].as_str()), (1, Some(kind)), "{args:?}");
    }
}

#[test]
fn usage_and_io_errors() {
    let (code, e) = fails(&["verify", "--suites", "12"]);
    assert_eq!((code, e["kind"].as_str()), (1, Some("UsageError")));
    let (code, e) = fails(&["adm", "--job", "/nonexistent/job.json"]);
    assert_eq!((code, e["kind"].as_str()), (1, Some("IoError")));
    let out = Command::new(env!("CARGO_BIN_EXE_adlv"))
        .args(["adm", "--group", "A1_sc", "--mu", "1"])
        .env("ADLV_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let threads = Command::new(env!("CARGO_BIN_EXE_adlv"))
        .args(["adm", "--group", "A1_sc", "--mu", "1"])
        .env("ADLV_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(0));
}
