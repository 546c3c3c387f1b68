use std::process::{Command, Output};

use serde_json::Value;

fn chainlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = chainlab(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&o)))
}

#[test]
fn chain_summary_line() {
    let o = chainlab(&["chain", "D:8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("classes: 2; group: Z2; eta: OK\n"));
    let s4 = chainlab(&["chain", "S:4"]);
    assert!(stdout(&s4).starts_with("classes: 1; group: trivial; eta: OK\n"));
}

#[test]
fn chartable_json_shape() {
    let v = json(&["chartable", "S:3"]);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["command"], "chartable");
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"]["dims"], serde_json::json!([1, 1, 2]));
    let values = v["result"]["values"].as_array().unwrap();
    assert_eq!(values.len(), 3);
    assert_eq!(values[0][0], serde_json::json!([1.0, 0.0]));
}

#[test]
fn fusion_pair_is_sparse() {
    let v = json(&["fusion", "S:3", "--pair", "2", "2"]);
    assert_eq!(
        v["result"]["coefficients"],
        serde_json::json!([[2, 2, 0, 1], [2, 2, 1, 1], [2, 2, 2, 1]])
    );
    assert_eq!(chainlab(&["fusion", "S:3", "--pair", "2", "9"]).status.code(), Some(2));
}

#[test]
fn lie_summary() {
    let o = chainlab(&["lie", "SU2", "--lmax", "10"]);
    assert!(stdout(&o).contains("2 classes (integer / half-integer); Z2"));
    let v = json(&["lie", "U2", "--lmax", "4"]);
    assert_eq!(v["result"]["class_count"], 17);
    assert_eq!(v["result"]["group"], "Z");
}

#[test]
fn center_action_weights() {
    let v = json(&["center-action", "D:8", "--gamma", "2", "--hom", "1:(1 2)", "--lambda", "0:1,4:1"]);
    let entries = v["result"]["entries"].as_array().unwrap();
    let weights: Vec<u64> = entries.iter().map(|e| e["weight"].as_u64().unwrap()).collect();
    assert_eq!(weights, vec![1, 2]);
    assert_eq!(v["result"]["central"], false);
    let bad_hom = chainlab(&["center-action", "D:8", "--gamma", "3", "--hom", "1:(1 2 3)", "--lambda", "0:1"]);
    assert_eq!(bad_hom.status.code(), Some(2));
}

#[test]
fn lab_commands() {
    let o = chainlab(&["lab", "parseval", "regular:S3", "--samples", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    let v = json(&["lab", "minimality", "swap-blocks:2"]);
    assert_eq!(v["result"]["minimal"], false);
    let v = json(&["lab", "intertwiners", "regular:C:4"]);
    assert_eq!(v["result"]["disjoint"], true);
    assert_eq!(v["result"]["minimal"], true);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["lab", "projections", "regular:S3", "--samples", "20", "--seed", "7", "--json"];
    assert_eq!(chainlab(&args).stdout, chainlab(&args).stdout);
    let other = ["lab", "projections", "regular:S3", "--samples", "20", "--seed", "8", "--json"];
    assert_ne!(chainlab(&args).stdout, chainlab(&other).stdout);
}

#[test]
fn verify_all_filter() {
    let v = json(&["verify-all", "--only", "quaternion"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["id"].as_str().unwrap().contains("quaternion")));
    assert_eq!(rows.len(), 8);
    assert_eq!(v["pass"], true);
}

#[test]
fn group_file_round_trip() {
    let v = json(&["group", "Q:8"]);
    let file = serde_json::json!({
        "order": v["result"]["order"],
        "mul": v["result"]["mul"],
        "names": v["result"]["names"],
    });
    let path = std::env::temp_dir().join(format!("chainlab-q8-{}.json", std::process::id()));
    std::fs::write(&path, file.to_string()).unwrap();
    let spec = format!("file:{}", path.display());
    let o = chainlab(&["chain", &spec]);
    std::fs::remove_file(&path).ok();
    assert!(stdout(&o).starts_with("classes: 2; group: Z2; eta: OK\n"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| chainlab(args).status.code();
    assert_eq!(code(&["chain", "X:3"]), Some(2));
    assert_eq!(code(&["chain"]), Some(2));
    assert_eq!(code(&["chain", "file:/nonexistent/g.json"]), Some(6));
    assert_eq!(code(&["lab", "parseval", "regular:S3", "--samples", "3", "--tol", "1e-30"]), Some(3));
    assert_eq!(code(&["chain", "perm:(1 2),(1 2 3 4 5 6 7 8)"]), Some(5));
    assert_eq!(code(&["lab", "intertwiners", "regular:S3"]), Some(7));
    let o = chainlab(&["chain", "X:3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_code"], 2);
    assert_eq!(v["pass"], false);
}

#[test]
fn help_documents_exit_codes() {
    let help = stdout(&chainlab(&["--help"]));
    for code in 0..=7 {
        assert!(help.contains(&format!("\n  {code}  ")), "exit code {code} missing from help");
    }
}
