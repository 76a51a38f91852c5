use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_braidforms"));
    c.env_remove("BRAIDFORMS_MAX_N");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn schema() -> JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/output.schema.json")).unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(schema: &JSONSchema, v: &Value) {
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations {msgs:?} in {v}");
    }
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["homfly", "--braid", "1 1 1", "--strands", "2"]), "2*v^2 + v^2*z^2 - v^4");
    assert_eq!(stdout(&["inner", "--a", "1", "--b", "", "--strands", "2", "--side", "L"]), "z");
    let g = json(&["gram", "--n", "3", "--basis", "neg", "--side", "L"]);
    let m = g["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 6);
    for (i, row) in m.iter().enumerate() {
        let row = row.as_array().unwrap();
        assert_eq!(row.len(), 6);
        for (j, x) in row.iter().enumerate() {
            assert_eq!(x["text"], if i == j { "1" } else { "0" });
        }
    }
    assert_eq!(g["identity"], true);
}

#[test]
fn oracle_matches_homfly_in_value_and_schema() {
    for (w, n) in [("1 1", "2"), ("1 -2 1 -2", "3"), ("1 2 1 2 -3", "4")] {
        let mut a = json(&["homfly", "--braid", w, "--strands", n]);
        let mut b = json(&["oracle-homfly", "--braid", w, "--strands", n]);
        assert_eq!(a["polynomial"], b["polynomial"]);
        a["command"] = Value::Null;
        b["command"] = Value::Null;
        assert_eq!(a, b);
    }
}

#[test]
fn every_subcommand_validates_against_schema() {
    let schema = schema();
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("f.svg");
    let svg = svg.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["homfly", "--braid", "1 1 1", "--strands", "2"],
        vec!["oracle-homfly", "--braid", "1 1", "--strands", "2"],
        vec!["framed-homfly", "--braid", "-1 2", "--strands", "3"],
        vec!["trace", "--braid", "1 1 1", "--strands", "2"],
        vec!["mfw", "--braid", "-1", "--strands", "2"],
        vec!["inner", "--a", "1 2", "--b", "-1", "--strands", "3", "--side", "R"],
        vec!["gram", "--n", "2", "--basis", "pos", "--side", "R"],
        vec!["expand", "--braid", "1 1 2", "--strands", "3"],
        vec!["mfw-sharp", "--braid", "-1", "--strands", "2"],
        vec!["mfw-sharp", "--braid", "-1", "--strands", "2", "--side", "L"],
        vec!["front-build", "nn", "--pi", "[2,1]", "--kappa", "[2,1]"],
        vec!["front-build", "pos", "--braid", "1 1 1", "--strands", "2", "--pi", "[1,2]"],
        vec!["front-ruling", "--front", "B1 B2 X3 X3 X3 D2 D1"],
        vec!["front-stats", "--front", "B1 B2 X3 X3 X3 D2 D1"],
        vec!["front-svg", "--front", "B1 D1"],
        vec!["front-svg", "--front", "B1 B2 X3 X3 X3 D2 D1", "-o", svg],
    ];
    for args in cases {
        assert_valid(&schema, &json(&args));
    }
    let out = run(&["selfcheck", "--level", "quick", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&schema, &v);
}

#[test]
fn selfcheck_exit_code_follows_the_reports() {
    let out = run(&["selfcheck", "--level", "quick", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let all_pass = v["reports"].as_array().unwrap().iter().all(|r| r["passed"] == true);
    assert_eq!(v["passed"], all_pass);
    assert_eq!(v["reports"].as_array().unwrap().len(), 11);
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 3 }));
}

#[test]
fn identical_invocations_give_identical_bytes() {
    for args in [
        vec!["gram", "--n", "3", "--basis", "neg", "--side", "L", "--format", "json"],
        vec!["expand", "--braid", "1 2 1 -2 1", "--strands", "3"],
        vec!["front-ruling", "--front", "B1 B2 X3 X3 X3 D2 D1", "--format", "json"],
        vec!["selfcheck", "--level", "quick", "--seed", "7"],
    ] {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn exit_codes() {
    // usage errors
    for args in [
        vec!["homfly", "--strands", "2"],
        vec!["homfly", "--braid", "3", "--strands", "2"],
        vec!["homfly", "--braid", "x", "--strands", "2"],
        vec!["inner", "--a", "1", "--b", "1", "--strands", "2", "--side", "Q"],
        vec!["gram", "--n", "2", "--basis", "both"],
        vec!["front-build", "nn", "--pi", "[1,1]", "--kappa", "[1,2]"],
        vec!["front-build", "nn", "--pi", "[2,1]", "--kappa", "[1,2,3]"],
        vec!["front-build", "pos", "--braid", "-1", "--strands", "2", "--pi", "[1,2]"],
        vec!["front-stats", "--front", "B1 Y2"],
        vec!["selfcheck", "--level", "medium"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    // computation errors
    for args in [
        vec!["front-stats", "--front", "B1 D2"],
        vec!["front-ruling", "--front", "B1 B1"],
        vec!["front-stats", "--front", "B1 D1", "--orientation", "1 0"],
        vec!["gram", "--n", "7"],
        vec!["oracle-homfly", "--braid", "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1", "--strands", "2"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
    let out = bin().args(["gram", "--n", "3"]).env("BRAIDFORMS_MAX_N", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sharpness_of_a_negative_crossing() {
    assert_eq!(stdout(&["mfw-sharp", "--braid", "-1", "--strands", "2"]), "lower: not sharp\nupper: sharp");
    let v = json(&["mfw", "--braid", "-1", "--strands", "2"]);
    assert_eq!(v["lower_column"]["text"], "0");
    assert_eq!(v["window"], serde_json::json!([-1, 1]));
}

#[test]
fn fronts_end_to_end() {
    let f = stdout(&["front-build", "pos", "--braid", "1 1 1", "--strands", "2", "--pi", "[1,2]"]);
    assert_eq!(f, "B1 B2 X3 X3 X3 D2 D1");
    let ruling = stdout(&["front-ruling", "--front", &f]);
    let inner = stdout(&["inner", "--a", "1 1 1", "--b", "", "--strands", "2"]);
    // z^{n-1} times the ruling polynomial
    assert_eq!(ruling, "2 + z^2");
    assert_eq!(inner, "2*z + z^3");
    let st = json(&["front-stats", "--front", &f]);
    assert_eq!(st["cusps"], 2);
    assert_eq!(st["components"], 1);
    assert_eq!(st["tb"], 1);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trefoil.svg");
    stdout(&["front-svg", "--front", &f, "-o", path.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"crossing\"").count(), 3);

    let nn = stdout(&["front-build", "nn", "--pi", "[2,3,1]", "--kappa", "[2,3,1]"]);
    assert_eq!(stdout(&["front-ruling", "--front", &nn]), "z^-2");
}
