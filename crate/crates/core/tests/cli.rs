use serde_json::Value;
use std::process::{Command, Output};

fn gcv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcv")).args(args).output().expect("spawn gcv")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn validator() -> jsonschema::JSONSchema {
    let schema: Value = serde_json::from_slice(&gcv(&["--json-schema"]).stdout).unwrap();
    jsonschema::JSONSchema::options().with_draft(jsonschema::Draft::Draft202012).compile(&schema).expect("schema compiles")
}

const RUNS: &[&[&str]] = &[
    &["acv", "--poly", "x+x^2*y", "--vars", "x,y", "--seed", "7"],
    &["infimum", "--poly", "(x*y-1)^2+x^2", "--vars", "x,y", "--seed", "3"],
    &["infimum", "--poly", "x", "--vars", "x,y"],
    &["newton", "--poly", "x+x^2*y", "--vars", "x,y", "--seed", "1"],
    &["constrained", "--objective", "x", "--constraints", "x^2+y^2-1", "--vars", "x,y", "--seed", "2"],
    &["bounds", "--scenario", "attained", "--n", "2", "--d", "2", "--r", "1", "--H", "3"],
    &["bounds", "--scenario", "constrained", "--n", "2", "--d", "2", "--d1", "2", "--r", "1"],
    &["facings", "--polys", "x+x^2*y", "--vars", "x,y"],
];

#[test]
fn every_subcommand_validates_and_reruns_identically() {
    let v = validator();
    for args in RUNS {
        let a = gcv(args);
        let doc = json(&a);
        assert_eq!(doc["schema_version"], "1");
        assert_eq!(doc["command"], args[0]);
        if let Err(errs) = v.validate(&doc) {
            let msgs: Vec<String> = errs.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{:?}: {:?}", args, msgs);
        }
        let b = gcv(args);
        assert_eq!(a.stdout, b.stdout, "{:?}", args);
    }
}

#[test]
fn golden_fields() {
    let doc = json(&gcv(&["bounds", "--scenario", "attained", "--n", "1", "--d", "2", "--H", "1"]));
    assert_eq!(doc["result"]["eta"], "22/1");
    let entries = doc["result"]["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["name"] == "log2_lower" && e["value"] == "-22/1"));
    let doc = json(&gcv(&["infimum", "--poly", "x^2+y^2", "--vars", "x,y"]));
    assert_eq!(doc["result"]["status"], "finite");
    assert_eq!(doc["result"]["attained"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(gcv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gcv(&[]).status.code(), Some(2));
    let bad = gcv(&["acv", "--poly", "x+*y", "--vars", "x,y"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
    assert_eq!(gcv(&["acv", "--poly", "x+z", "--vars", "x,y"]).status.code(), Some(2));
    assert_eq!(gcv(&["bounds", "--scenario", "nope", "--n", "1", "--d", "1"]).status.code(), Some(2));
    assert_eq!(gcv(&["--version"]).status.code(), Some(0));
    // leading minus signs are polynomial text, not flags
    let neg = gcv(&["newton", "--poly", "-x+x^2*y", "--constraints", "-2+x+2*y-y^2", "--vars", "x,y"]);
    assert_eq!(neg.status.code(), Some(0), "{}", String::from_utf8_lossy(&neg.stderr));
}

#[test]
fn file_arguments_and_output_flag() {
    let dir = std::env::temp_dir().join(format!("gcv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let poly = dir.join("f.txt");
    std::fs::write(&poly, "x + x^2*y\n").unwrap();
    let from_file = gcv(&["acv", "--poly", &format!("@{}", poly.display()), "--vars", "x,y", "--seed", "7"]);
    let inline = gcv(RUNS[0]);
    assert_eq!(from_file.stdout, inline.stdout);
    let cons = dir.join("g.txt");
    std::fs::write(&cons, "x^2+y^2-1\n").unwrap();
    let a = gcv(&["constrained", "--objective", "x", "--constraints", &format!("@{}", cons.display()), "--vars", "x,y", "--seed", "2"]);
    assert_eq!(a.stdout, gcv(RUNS[4]).stdout);
    let out = dir.join("out.json");
    let o = gcv(&["--output", out.to_str().unwrap(), "facings", "--polys", "x+x^2*y", "--vars", "x,y"]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), gcv(RUNS[7]).stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn timing_is_opt_in() {
    let doc = json(&gcv(RUNS[5]));
    assert!(doc.get("timing").is_none());
    let mut args = vec!["--timing"];
    args.extend_from_slice(RUNS[5]);
    let doc = json(&gcv(&args));
    assert!(doc["timing"]["wall_ms"].is_u64());
    assert!(validator().is_valid(&doc));
}
