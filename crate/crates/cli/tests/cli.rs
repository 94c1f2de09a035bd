use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn paramod(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_paramod")).args(args).env_remove("PARAMOD_SEED").output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, stdout)
}

fn scratch(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("paramod-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn divisors_example() {
    let (code, j, _) = paramod(&["divisors", "--pol", "1,4,24", "--vector", "6,3,1,0,0,0", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(j["schema"], "paramod-tits/1");
    assert_eq!(j["D"], serde_json::json!([2, 3]));
    assert_eq!(j["product"], 6);
}

#[test]
fn member_example() {
    let (code, j, _) =
        paramod(&["member", "--pol", "1,2", "--group", "tilde-pol", "--matrix", "1,0,0,1;0,1,2,0;0,0,1,0;0,0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(j["member"], true);
    let (_, j, _) = paramod(&["member", "--pol", "1,2", "--matrix", "1,0,0,1/2;0,1,0,0;0,0,1,0;0,0,0,1"]);
    assert_eq!(j["member"], false);
    assert_eq!(j["violation"]["violation"], "non-integer");
}

#[test]
fn reps_examples() {
    let (_, j, _) = paramod(&["reps", "--pol", "1,2", "--group", "tilde-pol", "--count-only"]);
    assert_eq!(j["count"], 2);
    let (_, j, _) = paramod(&["reps", "--pol", "1,2,6", "--group", "pol"]);
    assert_eq!(j["count"], 4);
    let (_, _, text) = paramod(&["reps", "--pol", "1,2", "--group", "lev", "--plain"]);
    assert_eq!(text, "(1,0,0,0)\n(2,1,0,0)\n(2,0,0,1)\n(2,1,0,1)\n");
}

#[test]
fn exit_codes() {
    let (code, j, _) = paramod(&["divisors", "--pol", "1,2", "--vector", "2,0,0,0"]);
    assert_eq!(code, 1);
    assert_eq!(j["error"]["kind"], "not-primitive");
    let (code, j, _) = paramod(&["divisors", "--pol", "2,3", "--vector", "1,0,0,0"]);
    assert_eq!(code, 1);
    assert_eq!(j["error"]["kind"], "invalid-polarization");
    assert_eq!(paramod(&["frobnicate"]).0, 2);
    assert_eq!(paramod(&["divisors", "--pol", "1,2", "--vector", "1,0,0,0", "--bogus"]).0, 2);
    let (code, j, _) = paramod(&["reduce-gspace", "--pol", "1,2", "--basis", "1,0,0,0;0,0,1,0"]);
    assert_eq!(code, 1);
    assert_eq!(j["error"]["kind"], "not-isotropic");
}

#[test]
fn canon_witness_round_trips() {
    let v = "-3,2,5,0,1,0";
    for group in ["tilde-pol", "tilde-pol-lev"] {
        let (code, j, text) = paramod(&["canon", "--pol", "1,2,6", "--group", group, "--vector", v]);
        assert_eq!(code, 0);
        let canonical: Vec<String> = j["canonical"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
        let path = scratch(&format!("canon-{group}.json"), &text);
        let m = format!("@{}", path.display());
        let (code, r, _) = paramod(&[
            "verify", "--pol", "1,2,6", "--group", group, "--matrix", &m, "--vector", v, "--expect", &canonical.join(","),
        ]);
        assert_eq!(code, 0);
        assert_eq!(r["ok"], true, "{r}");
        let (_, r, _) = paramod(&["member", "--pol", "1,2,6", "--group", group, "--matrix", &m]);
        assert_eq!(r["member"], true);
    }
}

#[test]
fn equiv_witness_round_trips() {
    let (_, j, text) = paramod(&["equiv", "--pol", "1,2", "--vector", "1,0,0,0", "--to", "3,1,0,2"]);
    assert_eq!(j["equivalent"], true);
    let path = scratch("equiv.json", &text);
    let m = format!("@{}", path.display());
    let (_, r, _) = paramod(&["verify", "--pol", "1,2", "--matrix", &m, "--vector", "1,0,0,0", "--expect", "3,1,0,2"]);
    assert_eq!(r["ok"], true);
    let (_, j, _) = paramod(&["equiv", "--pol", "1,2", "--vector", "1,0,0,0", "--to", "0,1,0,0"]);
    assert_eq!(j["equivalent"], false);
}

#[test]
fn reduce_gspace_round_trips() {
    // rows e_i M of a sampled element span the image of the standard lattice
    let m = paramod(&["sample", "--pol", "1,2,6", "--seed", "3", "--length", "15"]).1;
    let rows: Vec<String> = m["matrix"]["entries"].as_array().unwrap()[..3]
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    let basis = rows.join(";");
    let (code, j, text) = paramod(&["reduce-gspace", "--pol", "1,2,6", "--basis", &basis, "--tape"]);
    assert_eq!(code, 0, "{text}");
    assert!(j["tape"].as_array().unwrap().len() == j["steps"].as_u64().unwrap() as usize);
    let gamma = scratch("gamma.json", &serde_json::to_string(&j["gamma"]).unwrap());
    let u = scratch("u.json", &serde_json::to_string(&j["unimodular"]).unwrap());
    let b = scratch("b.json", &serde_json::to_string(&j["basis"]).unwrap());
    let (_, r, _) = paramod(&[
        "verify",
        "--pol",
        "1,2,6",
        "--matrix",
        &format!("@{}", gamma.display()),
        "--basis",
        &format!("@{}", b.display()),
        "--unimodular",
        &format!("@{}", u.display()),
    ]);
    assert_eq!(r["ok"], true, "{r}");
    let (code, j, _) = paramod(&["reduce-gspace", "--pol", "1,2,4", "--basis", "1,0,0,0,0,0;0,1,0,0,0,0;0,0,1,0,0,0"]);
    assert_eq!(code, 1);
    assert_eq!(j["error"]["kind"], "unsupported-polarization");
}

#[test]
fn sample_is_deterministic_and_seeded_by_env() {
    let a = paramod(&["sample", "--pol", "1,2", "--group", "conj-pol-lev", "--seed", "5"]).1;
    let b = paramod(&["sample", "--pol", "1,2", "--group", "conj-pol-lev", "--seed", "5"]).1;
    assert_eq!(a, b);
    assert_eq!(a["member"], true);
    let out = Command::new(env!("CARGO_BIN_EXE_paramod"))
        .args(["sample", "--pol", "1,2", "--group", "conj-pol-lev"])
        .env("PARAMOD_SEED", "5")
        .output()
        .unwrap();
    let c: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(a, c);
}

#[test]
fn oracle_subcommands() {
    let (code, j, _) = paramod(&["oracle", "cross-validate", "--pol", "1,2", "--group", "lev", "--bound", "2"]);
    assert_eq!(code, 0);
    assert_eq!(j["agree"], true);
    assert_eq!(j["classes"].as_array().unwrap().len(), 4);
    let (_, j, _) = paramod(&["oracle", "cross-validate", "--pol", "1,2,6", "--cap", "10"]);
    assert_eq!(j["incomplete"], true);
    let (code, _, _) = paramod(&["oracle", "cross-validate", "--pol", "1,2,6", "--bound", "3"]);
    assert_eq!(code, 1);
    let (_, j, _) = paramod(&["oracle", "walk", "--pol", "1,2", "--group", "lev", "--vector", "2,1,0,0", "--walks", "10"]);
    assert_eq!(j["escapes"], serde_json::json!([]));
}
