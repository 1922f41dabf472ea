use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitk"))
        .args(args)
        .env_remove("ORBITK_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn kleinian_golden() {
    assert_eq!(stdout(&["kleinian", "--s", "7"]), "Z/8\n");
    assert_eq!(json(&["kleinian", "--s", "2"])["results"]["group"], "Z/3");
}

#[test]
fn kronecker_from_preset_and_file() {
    let preset = json(&["cluster-k0", "--quiver", "kronecker3", "--n", "1"]);
    let file = data("kronecker3.json");
    let from_file = json(&["cluster-k0", "--quiver-file", &file, "--n", "3"]);
    assert_eq!(preset["results"]["group"], "Z/3 (+) Z/3");
    assert_eq!(from_file["results"]["group"], "Z/3 (+) Z/3");
    assert_eq!(preset["results"]["matrix"], from_file["results"]["matrix"]);
}

#[test]
fn n_zero_warns() {
    let r = json(&["cluster-k0", "--quiver", "D4", "--n", "0"]);
    assert_eq!(r["results"]["group"], "Z/2 (+) Z/2");
    assert_eq!(r["warnings"][0]["code"], "n0-not-triangulated");
}

#[test]
fn reports_are_byte_identical() {
    let spec = data("unipotent_spec.json");
    let args = ["--json", "orbit-triangle", "--spec", spec.as_str()];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["inputs_digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(v["exit_status"], 0);
}

#[test]
fn digest_tracks_file_contents() {
    let dir = std::env::temp_dir().join(format!("orbitk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    let p = path.display().to_string();
    std::fs::write(&path, r#"{"flags":{"connective":true},"degrees":{"0":{"group":"Z"}}}"#).unwrap();
    let first = json(&["orbit-triangle", "--spec", &p]);
    std::fs::write(&path, r#"{"flags":{"connective":true},"degrees":{"0":{"group":"Z/2"}}}"#).unwrap();
    let second = json(&["orbit-triangle", "--spec", &p]);
    assert_ne!(first["inputs_digest"], second["inputs_digest"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn orbit_triangle_modes() {
    let spec = data("identity_spec.json");
    let plain = json(&["orbit-triangle", "--spec", &spec]);
    let degrees = plain["results"]["degrees"].as_array().unwrap();
    let resolved: Vec<&str> = degrees.iter().map(|d| d["resolved"].as_str().unwrap()).collect();
    assert_eq!(resolved, ["Z^1", "Z^1 (+) Z/2", "Z/2"]);

    let odd = json(&["orbit-triangle", "--spec", &spec, "--suspension", "1"]);
    let coker: Vec<&str> = odd["results"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["coker"].as_str().unwrap())
        .collect();
    assert_eq!(coker, ["Z/2", "Z/2", "0"]);

    let regular = data("unipotent_spec.json");
    let r = json(&["orbit-triangle", "--spec", &regular, "--identity"]);
    assert_eq!(r["results"]["degrees"][1]["resolved"], "Z^3 (+) Z/4");
}

#[test]
fn hp_and_mukai_commands() {
    let r = json(&["hp-sixterm", "--f-even", "[[1,0],[2,1]]", "--f-odd", "[[1]]"]);
    assert_eq!((r["results"]["plus"].as_u64(), r["results"]["minus"].as_u64()), (Some(2), Some(2)));
    let r = json(&["hp-sixterm", "--f-even", "[[-1]]", "--f-odd", "[]", "--field", "F2"]);
    assert_eq!(r["results"]["plus"], 1);

    let p1 = data("p1.json");
    let from_file = json(&["hp-line-bundle", "--model", &p1, "--n", "0"]);
    let builtin = json(&["hp-line-bundle", "--builtin", "P1", "--degree", "2", "--n", "0"]);
    assert_eq!(from_file["results"]["plus"], builtin["results"]["plus"]);
    assert_eq!(from_file["results"]["plus"], 1);

    let k3 = json(&["spherical-hp", "--builtin", "k3"]);
    assert_eq!(k3["results"]["plus"], 23);
    let k0 = json(&["spherical-k0", "--chi", "2,0", "--e", "1,0"]);
    assert_eq!(k0["results"]["group"], "Z^1 (+) Z/2");
}

#[test]
fn curve_odd_branch_warns() {
    let r = json(&["curve-kh0", "--pic", "Z", "--l", "1", "--n", "1"]);
    assert_eq!(r["results"]["group"], "Z/4");
    assert_eq!(r["warnings"][0]["code"], "product-formula-mismatch");
    let even = json(&["curve-kh0", "--pic", "Z", "--l", "3", "--n", "-2"]);
    assert_eq!(even["results"]["group"], "Z^1 (+) Z/3");
}

#[test]
fn dg_orbit_runs_every_check() {
    let cat = data("dual_numbers.json");
    let functor = data("dual_numbers_scale3.json");
    let r = json(&["dg-orbit", "--cat", &cat, "--functor", &functor, "--N", "3", "--P", "2"]);
    let res = &r["results"];
    assert_eq!(res["passed"], true);
    assert_eq!(res["orbit"]["pairs"][0]["weight_dims"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(res["epsilon"]["passed"], true);
    assert_eq!(res["comparison"]["passed"], true);
    assert_eq!(res["h0"]["dims"], serde_json::json!([[1]]));

    let two = data("two_points.json");
    let swap = data("swap.json");
    let r = json(&["dg-orbit", "--cat", &two, "--functor", &swap, "--check", "comparison"]);
    assert_eq!(r["results"]["comparison"]["passed"], true);
    assert!(r["results"].get("orbit").is_none());
}

#[test]
fn snf_golden() {
    let out = stdout(&["snf", "--matrix", "[[2,4],[6,8]]"]);
    assert_eq!(out, "diagonal: [2, 4]\ncokernel: Z/2 (+) Z/4\n");
}

#[test]
fn selfcheck_is_seeded() {
    let a = Command::new(env!("CARGO_BIN_EXE_orbitk"))
        .args(["selfcheck", "--cases", "20"])
        .env("ORBITK_SEED", "11")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("seed 11\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["kleinian"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["kleinian", "--s", "0"]).status.code(), Some(1));
    assert_eq!(run(&["cluster-k0", "--quiver", "Z9", "--n", "1"]).status.code(), Some(1));
    assert_eq!(run(&["orbit-triangle", "--spec", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(run(&["snf", "--matrix", "[[1,2],[3]]"]).status.code(), Some(1));
}

#[test]
fn failures_produce_no_results() {
    let out = run(&["--json", "curve-kh0", "--pic", "Z", "--l", "1,2", "--n", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"], Value::Null);
    assert!(v["error"].is_string());
    let human = run(&["curve-kh0", "--pic", "Z", "--l", "1,2", "--n", "0"]);
    assert!(human.stdout.is_empty());
    assert!(String::from_utf8(human.stderr).unwrap().starts_with("error:"));
}

#[test]
fn invalid_spec_is_rejected() {
    let dir = std::env::temp_dir().join(format!("orbitk-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"flags":{"connective":true},"degrees":{"0":{"group":"Z^2","auto":[[2,0],[0,1]]}}}"#,
    )
    .unwrap();
    let out = run(&["orbit-triangle", "--spec", &path.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
