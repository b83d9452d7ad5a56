use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const A4: &str = "perm:[(1,2,3),(1,2)(3,4)]";
const A4_ORDER: &str = "1,u,u^2*v,v,u^2*v*u,u^2,v*u,u*v,u*v*u,v*u*v,v*u^2,u*v*u^2";

fn groupcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupcode"))
        .args(args)
        .env_remove("GROUPCODE_CAP")
        .output()
        .expect("binary runs")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn every_golden_job_meets_its_expectations() {
    let mut files: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    assert!(files.len() >= 15);
    for f in files {
        let out = groupcode(&["run", f.to_str().unwrap()]);
        assert!(out.status.success(), "{}: {}", f.display(), String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn analyze_with_flags() {
    let out = groupcode(&["analyze", "--field", "gf:2", "--group", A4, "--order", A4_ORDER, "--elem", "u + u^2*v*u"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("dim: 8\n"), "{text}");
    assert!(text.contains("m_b: x*(1+x+x^2)^2"));
}

#[test]
fn indicator_prints_the_inverse_matrix() {
    let out = groupcode(&[
        "indicator",
        "--field",
        "gf:3",
        "--group",
        "product:cyclic:2,cyclic:4",
        "--orderings",
        "1,2;1,2,a^2,a^6",
        "--ext-modulus",
        "x^2+2*x+2",
        "--json",
    ]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["schema"], 1);
    let d = doc["result"]["d"].as_array().unwrap();
    assert_eq!(d.len(), 8);
    assert_eq!(d[6], serde_json::json!(["1", "a+1", "2", "2*a+2", "2", "2*a+2", "1", "a+1"]));
}

#[test]
fn exit_codes() {
    let zero = groupcode(&["classify", "--field", "gf:3", "--group", "cyclic:4", "--elem", "0"]);
    assert_eq!(zero.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&zero.stderr).contains("ZeroElement"));
    let not_semisimple = groupcode(&["orbits", "--field", "gf:2", "--group", "cyclic:4"]);
    assert_eq!(not_semisimple.status.code(), Some(2));
    let bad_elem = groupcode(&["analyze", "--field", "gf:3", "--group", "cyclic:4", "--elem", "1+*x"]);
    assert_eq!(bad_elem.status.code(), Some(1));
    let bad_field = groupcode(&["analyze", "--field", "GF9", "--group", "cyclic:4", "--elem", "1"]);
    assert_eq!(bad_field.status.code(), Some(1));
    let unknown_flag = groupcode(&["analyze", "--colour"]);
    assert_eq!(unknown_flag.status.code(), Some(1));
    let missing_elem = groupcode(&["classify", "--field", "gf:3", "--group", "cyclic:4"]);
    assert_eq!(missing_elem.status.code(), Some(1));
}

#[test]
fn errors_are_reported_in_json() {
    let out = groupcode(&["idempotent", "--field", "gf:2", "--group", A4, "--order", A4_ORDER, "--elem", "1+u+v+u^2*v*u", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json_of(&out);
    assert_eq!(doc["error"]["code"], "NotProjective");
    assert!(doc.get("result").is_none());
}

#[test]
fn json_round_trips_byte_for_byte_and_is_deterministic() {
    let golden = golden_dir();
    for name in ["a4_b.toml", "c2c4_indicator.toml", "s3_b.toml", "q8_b1.toml", "c5_orbits.toml"] {
        let path = golden.join(name);
        let first = groupcode(&["run", path.to_str().unwrap(), "--json"]);
        let second = groupcode(&["run", path.to_str().unwrap(), "--json"]);
        assert_eq!(first.stdout, second.stdout, "{name}");
        let text = String::from_utf8(first.stdout).unwrap();
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&value).unwrap()), text, "{name}");
    }
}

#[test]
fn conjecture_notes_are_tagged_and_can_be_hidden() {
    let args = ["classify", "--field", "gf:3", "--group", "cyclic:3", "--elem", "1+x", "--json"];
    let doc = json_of(&groupcode(&args));
    let notes = doc["result"]["conjecture_notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n["conditional"] == "mds_conjecture"));
    let unconditional = notes.iter().find(|n| n["id"] == "mds_ecd_length").unwrap();
    assert!(unconditional.get("conditional").is_none());
    let mut hidden = args.to_vec();
    hidden.push("--no-notes");
    assert!(json_of(&groupcode(&hidden))["result"].get("conjecture_notes").is_none());
}

#[test]
fn distance_cap_from_flag_and_environment() {
    let args = ["mindist", "--field", "gf:3", "--group", "product:cyclic:2,cyclic:4", "--elem", "1", "--json"];
    let full = json_of(&groupcode(&args));
    assert_eq!(full["result"]["distance"], serde_json::json!({"status": "exact", "d": 1}));
    let mut capped = args.to_vec();
    capped.extend(["--cap", "10"]);
    let doc = json_of(&groupcode(&capped));
    assert_eq!(doc["result"]["distance"]["status"], "capped");
    assert_eq!(doc["result"]["distance"]["examined"], 10);
    let env = Command::new(env!("CARGO_BIN_EXE_groupcode")).args(args).env("GROUPCODE_CAP", "20").output().unwrap();
    assert_eq!(json_of(&env)["result"]["distance"]["examined"], 20);
}

#[test]
fn failed_expectations_exit_with_three() {
    let dir = std::env::temp_dir().join(format!("groupcode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let job = dir.join("wrong.toml");
    std::fs::write(
        &job,
        "command = \"analyze\"\nfield = \"gf:3\"\ngroup = \"cyclic:4\"\nelem = \"1+x\"\n\n[expect]\n\"/result/dim_exact\" = 4\n",
    )
    .unwrap();
    let out = groupcode(&["run", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/result/dim_exact"));
    std::fs::write(&job, "command = \"analyze\"\nfield = \"gf:3\"\n").unwrap();
    assert_eq!(groupcode(&["run", job.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
