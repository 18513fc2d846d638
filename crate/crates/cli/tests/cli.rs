use std::process::{Command, Output};

use serde_json::Value;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .env_remove("PARAFERM_TRUNCATION")
        .output()
        .expect("binary runs")
}

fn reports(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json lines"))
        .collect()
}

#[test]
fn ope_passes() {
    let out = verify(&["ope", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = reports(&out);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["check"], "ope");
    assert_eq!(r[0]["status"], "pass");
    assert_eq!(r[0]["items"].as_array().unwrap().len(), 12);
}

#[test]
fn identify_emits_two_bijections() {
    let out = verify(&["identify", "--k", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &reports(&out)[0];
    let bij = r["data"]["bijections"].as_array().unwrap();
    assert_eq!(bij.len(), 2);
    for b in bij {
        assert_eq!(b["pairs"].as_array().unwrap().len(), 15);
    }
}

#[test]
fn decomposition_passes() {
    let out = verify(&["lk0-decomposition", "--k", "3", "--max-weight", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out)[0]["params"]["max_weight"], 6);
}

#[test]
fn environment_sets_the_weight_bound() {
    let out = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(["lki-decomposition", "--k", "3", "--i", "1"])
        .env("PARAFERM_TRUNCATION", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out)[0]["params"]["max_weight"], 4);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(verify(&["all", "--kmax", "2"]).status.code(), Some(2));
    assert_eq!(verify(&["ope"]).status.code(), Some(2));
    assert_eq!(verify(&["no-such-check"]).status.code(), Some(2));
    assert_eq!(verify(&["lki-decomposition", "--k", "3", "--i", "7"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = verify(&["w1inf-generation", "--max", "12"]);
    let b = verify(&["w1inf-generation", "--max", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = &reports(&a)[0];
    assert!(r["data"]["derivations"]["12"].as_str().unwrap().contains("J^2"));
}

#[test]
fn table_format_and_out_file() {
    let dir = std::env::temp_dir().join(format!("verify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let out = verify(&["central-charge", "--k", "3", "--format", "table", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("central-charge"));
    assert!(text.contains("c(omega_para)"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn list_names_every_check() {
    let out = verify(&["list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["ope", "singular-vector", "string-dual-route", "identify", "intertwiner-leading"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn all_checks_pass_for_level_three() {
    let out = verify(&["all", "--kmax", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = reports(&out);
    let keys: Vec<(String, String)> = r
        .iter()
        .map(|x| (x["check"].as_str().unwrap().to_string(), x["params"].to_string()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(r.len(), 12);
    assert!(r.iter().all(|x| x["status"] != "fail"));
    assert_eq!(keys.iter().map(|k| &k.0).collect::<Vec<_>>(), sorted.iter().map(|k| &k.0).collect::<Vec<_>>());
}
