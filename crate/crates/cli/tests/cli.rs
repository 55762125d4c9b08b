use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use cobord_core::{Integers, LazardBasisTable, LazardRing, RingPresentation};
use serde_json::Value;

fn cobord(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cobord"));
    cmd.args(args).env_remove("COBORD_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("COBORD_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = cobord(args, None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn lazard_ranks() {
    let v = json(&["lazard", "--max-codegree", "4"]);
    assert_eq!(v["version"], 1);
    assert_eq!(v["result"]["ranks"], serde_json::json!([1, 1, 2, 3, 5]));
    assert_eq!(v["result"]["basis"][2]["elements"], serde_json::json!(["a12", "a11^2"]));
}

#[test]
fn universal_law_text() {
    let out = cobord(&["fgl", "--order", "2"], None);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "F(u,v) = u + v + a11*u*v\n");
}

#[test]
fn law_json() {
    let v = json(&["fgl", "--order", "3", "--law", "multiplicative", "--n-series", "3", "--format", "json"]);
    assert_eq!(v["result"]["coefficients"], "Z[β,β^-1]");
    assert_eq!(v["result"]["n_series"]["series"]["text"], "3*u - 3*β*u^2 + β^2*u^3");
}

#[test]
fn sl2_chow_is_polynomial_in_gamma2() {
    let v = json(&["ring", "--group", "sl", "--rank", "2", "--t-degree", "3", "--specialize", "chow"]);
    let r = &v["result"];
    assert_eq!(r["coefficients"], "Z");
    assert_eq!(r["generators"], serde_json::json!([{"name": "γ2", "degree": 2}]));
    assert_eq!(r["relations"], serde_json::json!([]));
    let ranks: Vec<u64> = r["graded_pieces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["rank"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, [1, 0, 1, 0]);
    assert_eq!(r["graded_pieces"][2]["basis"][0]["text"], "γ2");
    assert_eq!(r["eliminated"]["solution"]["text"], "0");
}

#[test]
fn ring_json_round_trips() {
    let v = json(&["ring", "--group", "gl", "--rank", "2", "--t-degree", "3", "--degree=-1,0,2"]);
    let depth = 4;
    let l = LazardRing::new(Arc::new(LazardBasisTable::build(depth).unwrap()));
    let p = RingPresentation::from_json(l.clone(), &v["result"]).unwrap();
    let direct = cobord_core::classifying::ring_bgl(l, 2, 3, &[-1, 0, 2]).unwrap();
    assert_eq!(&p, direct.presentation());

    let v = json(&["ring", "--rank", "2", "--t-degree", "2", "--specialize", "chow"]);
    let p = RingPresentation::from_json(Integers, &v["result"]).unwrap();
    assert_eq!(p.ranks(), [(0, 1), (1, 2), (2, 3)]);
}

#[test]
fn invariants_compare_with_gl() {
    let v = json(&["invariants", "--rank", "2", "--t-degree", "2", "--compare-gl"]);
    assert_eq!(v["result"]["rational_equal"], true);
    let first = &v["result"]["slices"][3];
    assert_eq!((first["t_degree"].as_u64(), first["codegree"].as_u64()), (Some(1), Some(0)));
    assert_eq!(first["basis"], serde_json::json!(["t1 + t2"]));
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["ring", "--group", "sl", "--rank", "3", "--t-degree", "3"];
    let cold = cobord(&args, Some(dir.path()));
    let warm = cobord(&args, Some(dir.path()));
    let uncached = cobord(&args, None);
    assert!(cold.status.success());
    assert!(dir.path().join("lazard_basis_3.json").exists());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);
}

#[test]
fn corrupted_cache_is_refused_until_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["lazard", "--max-codegree", "3"];
    let good = cobord(&args, Some(dir.path()));
    let file = dir.path().join("lazard_basis_3.json");
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, text.replacen("\"rank\": 2", "\"rank\": 3", 1)).unwrap();

    let bad = cobord(&args, Some(dir.path()));
    assert!(!bad.status.success());
    let err: Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid_cache");
    assert!(err["error"]["message"].as_str().unwrap().contains("--rebuild-cache"));

    let rebuilt = cobord(&["lazard", "--max-codegree", "3", "--rebuild-cache"], Some(dir.path()));
    assert!(rebuilt.status.success());
    assert_eq!(rebuilt.stdout, good.stdout);
    assert_eq!(cobord(&args, Some(dir.path())).stdout, good.stdout);
}

#[test]
fn flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = cobord(
        &["lazard", "--max-codegree", "2", "--cache-dir", flag_dir.path().to_str().unwrap()],
        Some(env_dir.path()),
    );
    assert!(out.status.success());
    assert!(flag_dir.path().join("lazard_basis_2.json").exists());
    assert!(!env_dir.path().join("lazard_basis_2.json").exists());
}

#[test]
fn errors_are_structured() {
    let out = cobord(&["fgl", "--order", "0", "--format", "json"], None);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid_input");

    let out = cobord(&["ring", "--group", "nope"], None);
    assert!(!out.status.success());
}
