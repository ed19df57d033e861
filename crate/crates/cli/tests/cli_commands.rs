use std::path::PathBuf;
use std::process::{Command, Output};

fn iwasawa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwasawa")).args(args).env_remove("IWASAWA_MAX_PN").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("iwasawa-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn euler_char_for_11a() {
    let o = iwasawa(&["euler-char", "--curve", "11a1", "--p", "5", "--sel-order", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["body"]["total"], 1);
    assert_eq!(v["body"]["reduction_at_p"], "good");
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &["analyze", "--curve", "195a2", "--p", "2", "--format", "json"][..],
        &["tables", "--format", "json"][..],
        &["growth", "p=3 coeffs=[3,3,1]", "--format", "json"][..],
    ] {
        let a = iwasawa(args);
        let b = iwasawa(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn mismatch_exits_with_two() {
    let extra = scratch(
        "wrong.json",
        r#"[{"label": "wrong-11", "ainvs": [0,-1,1,-10,-20], "expect": {"conductor": 12, "torsion": "Z/5"}}]"#,
    );
    let o = iwasawa(&["analyze", "--curve", "wrong-11", "--p", "5", "--extra", extra.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    let bad: Vec<_> = checks.iter().filter(|c| c["pass"] == false).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["computed"], "11");
}

#[test]
fn extra_entries_can_be_analyzed() {
    let extra = scratch("ok.json", r#"{"curves": [{"label": "17a1", "ainvs": [1,-1,1,-1,-14], "expect": {"conductor": 17, "torsion": "Z/4"}}]}"#);
    let o = iwasawa(&["analyze", "--curve", "17a1", "--p", "3", "--extra", extra.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(iwasawa(&["euler-char", "--curve", "11a", "--p", "4"]).status.code(), Some(1));
    assert_eq!(iwasawa(&["analyze", "--curve", "no-such-curve", "--p", "5"]).status.code(), Some(1));
    assert_eq!(iwasawa(&["growth", "p=3 coeffs=[]"]).status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_iwasawa"))
        .args(["growth", "p=3 coeffs=[-3,1]"])
        .env("IWASAWA_MAX_PN", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn supersingular_analysis_reports_corank_bound() {
    let o = iwasawa(&["analyze", "--curve", "32a", "--p", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let err = v["body"]["euler_characteristic"]["error"].as_str().unwrap();
    assert!(err.contains("supersingular"), "{err}");
    assert!(v["body"]["criteria"]["corank"]["corank_lower_bound"].as_u64().unwrap() >= 1);
}

#[test]
fn infinitude_fires_for_67a1() {
    let o = iwasawa(&["analyze", "--curve", "67a1", "--p", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["body"]["euler_characteristic"]["total"], 2);
    assert_eq!(v["body"]["criteria"]["infinite"]["holds"], true);
}

#[test]
fn growth_and_functional_equation() {
    let v = json(&iwasawa(&["growth", "p=3 coeffs=[-3,1]", "--format", "json"]));
    assert_eq!((v["body"]["lambda"].as_u64(), v["body"]["mu"].as_u64(), v["body"]["nu"].as_i64()), (Some(1), Some(0), Some(1)));
    let v = json(&iwasawa(&["fe", "p=3 coeffs=[3,3,1]", "--format", "json"]));
    assert_eq!(v["body"]["functional_equation"]["w"], 1);
    assert_eq!(v["body"]["functional_equation"]["c_int"], -2);
    let v = json(&iwasawa(&["fe", "p=2 coeffs=[2,1]", "--format", "json"]));
    assert_eq!(v["body"]["iota_associate"]["associates"], true);
}

#[test]
fn forge_from_spec_file() {
    let spec = scratch("spec.json", r#"{"P":[[5,2]],"L":[[3,1,2]],"Q":[7]}"#);
    let args = ["forge", "--spec", spec.to_str().unwrap(), "--seed", "7", "--format", "json"];
    let o = iwasawa(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(o.stdout, iwasawa(&args).stdout);
    let bad = scratch("bad.json", r#"{"P":[[5,7]],"L":[],"Q":[]}"#);
    assert_eq!(iwasawa(&["forge", "--spec", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verify_points_and_mu_bound() {
    assert_eq!(iwasawa(&["verify-points"]).status.code(), Some(0));
    let v = json(&iwasawa(&["mu-bound", "--curve", "195a2", "--p", "2", "--format", "json"]));
    assert!(v["body"]["bound"]["lower_bound"].as_u64().unwrap() >= 1, "{v}");
    let o = iwasawa(&["mu-bound", "--curve", "768d3", "--p", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["body"]["bound"]["lower_bound"].as_u64().unwrap() >= 1);
}

#[test]
fn criteria_text_output() {
    let o = iwasawa(&["criteria", "--curve", "11a", "--p", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vanishing"));
}
