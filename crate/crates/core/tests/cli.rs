use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rankin-periods"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn binary");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn balanced_examples() {
    let out = run(&["balanced"], r#"{"field":"R","mu":[[2,0]],"nu":[[0]]}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out), json!({"lo": -2, "hi": 0}));

    let out = run(&["balanced"], r#"{"field":"C","mu":[[0,0],[0,0]],"nu":[[0],[0]]}"#);
    assert_eq!(json_out(&out), json!({"lo": 0, "hi": 0}));

    let out = run(&["balanced"], r#"{"field":"R","mu":[[0,0,0]],"nu":[[0]]}"#);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["balanced"], "not json");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn balanced_reads_a_file_argument() {
    let dir = std::env::temp_dir().join(format!("rp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.json");
    std::fs::write(&path, r#"{"field":"R","mu":[[2,0]],"nu":[[0]]}"#).unwrap();
    let out = run(&["balanced", path.to_str().unwrap()], "");
    assert_eq!(json_out(&out), json!({"lo": -2, "hi": 0}));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn critical_places() {
    let out = run(&["critical"], r#"{"field":"R","mu":[[2,0]],"nu":[[0]]}"#);
    assert_eq!(json_out(&out), json!(["-3/2", "-1/2", "1/2"]));
}

#[test]
fn omega_examples() {
    let out = run(&["omega"], r#"{"field":"R","mu":[[2,0]],"nu":[[0]],"j":0,"eps_psi":1}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out), json!("-1"));
    assert!(out.stderr.is_empty());

    let out = run(&["omega"], r#"{"field":"R","mu":[[2,0]],"nu":[[0]],"j":3}"#);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not balanced"));
}

#[test]
fn verify_trivial_and_unbalanced() {
    let out = run(&["verify"], r#"{"field":"R","mu":[[0,0]],"nu":[[0]]}"#);
    assert_eq!(out.status.code(), Some(0));
    let report = json_out(&out);
    assert_eq!(report["exact_match"], json!(true));
    assert_eq!(report["constant"], report["omega"]);

    let out = run(&["verify"], r#"{"field":"R","mu":[[2,0]],"nu":[[0]],"j":3}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not balanced"));
}

#[test]
fn verify_fails_on_impossible_tolerance() {
    let case = r#"{"field":"R","mu":[[3,1,-1]],"nu":[[1,-1]],"j":0,"eps":{"delta_n":1}}"#;
    let out = run(&["verify"], case);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["verify", "--match-tol", "1e-300"], case);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn suite_is_deterministic() {
    let a = run(&["suite", "--cases", "40", "--seed", "9"], "");
    let b = run(&["suite", "--cases", "40", "--seed", "9"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut serial = json_out(&run(&["suite", "--cases", "40", "--seed", "9", "--threads", "1"], ""));
    let report = json_out(&a);
    serial["config"] = report["config"].clone();
    assert_eq!(serial, report);
    assert_eq!(report["total"], json!(40));
    assert_eq!(report["exact_matches"], json!(40));
}

#[test]
fn suite_config_errors() {
    let dir = std::env::temp_dir().join(format!("rp-suite-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cfg.json");
    std::fs::write(&path, r#"{"cases": 10, "n_min": 1}"#).unwrap();
    let out = run(&["suite", "--config", path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&path, r#"{"cases": 10, "bogus": 1}"#).unwrap();
    let out = run(&["suite", "--config", path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn zmatrix_orbit_gauss() {
    let out = run(&["zmatrix", "3"], "");
    assert_eq!(json_out(&out), json!([[1, 2, 1], [0, 1, 0], [0, 0, 1]]));

    let out = run(&["orbit", "3"], "");
    assert_eq!(json_out(&out), json!({"n": 3, "rank": 13, "expected": 13, "open": true}));

    let out = run(&["gauss", "--modulus", "4", "--index", "1"], "");
    assert_eq!(json_out(&out), json!({"level": 4, "coeffs": ["0", "2"]}));

    let out = run(&["gauss", "--modulus", "5", "--all"], "");
    assert_eq!(json_out(&out).as_array().unwrap().len(), 4);

    let out = run(&["gauss", "--modulus", "5", "--index", "9"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gamma_subcommand() {
    let out = run(&["gamma", "Γ_R(s+2)*Γ_R(-s)*Γ_R(s)^-1*Γ_R(-s+2)^-1"], "");
    assert_eq!(json_out(&out)["reduced"], json!("-1"));

    let out = run(&["gamma", "--pretty", "--shift", "1/2"], "Γ_C(s)");
    assert_eq!(json_out(&out)["product"], json!("Γ_C(s+1/2)"));
    assert_eq!(json_out(&out)["reduced"], json!("not-constant"));

    let out = run(&["gamma", "Γ_Q(s)"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lfactor_outputs_round_trip() {
    let out = run(&["lfactor", "--n", "3"], r#"{"kind":"complex","a":"3/2","b":"-1/2"}"#);
    let v = json_out(&out);
    assert_eq!(v["epsilon"], json!("-1"));
    let l: rankin_periods::gamma::GammaProduct = serde_json::from_value(v["l"].clone()).unwrap();
    assert_eq!(l.to_string(), "Γ_C(s+3/2)");

    let out = run(&["lfactor", "--pretty"], r#"{"field":"R","mu":[[2,0]],"nu":[[0]]}"#);
    assert_eq!(json_out(&out)["l_pair"], json!("Γ_C(s+5/2)"));
}
