use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use sl_local::counterexample::DeltaAlpha;
use sl_local::rational::int;
use sl_local::LinMap;

fn sl_local(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl-local"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn classify_automorphism_and_non_member() {
    let dir = tempfile::tempdir().unwrap();
    let delta1 = write(
        dir.path(),
        "d1.json",
        r#"{"n":2,"M":[["3","0","0"],["0","1/3","0"],["0","0","1"]]}"#,
    );
    let out = sl_local(&["classify-sl2", "--map", &delta1]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "automorphism");
    assert_eq!(v["det_preserving"], true);
    assert_eq!(v["witness"]["sign"], 1);

    let double = write(
        dir.path(),
        "double.json",
        r#"{"n":2,"M":[["2","0","0"],["0","2","0"],["0","0","2"]]}"#,
    );
    let v = json(&sl_local(&["classify-sl2", "--map", &double]));
    assert_eq!(v["verdict"], "not a local automorphism");
    assert!(v["witness"].is_null());
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"n":2,"M":[["1","0"],["0","1"]]}"#,
    );
    let n3 = serde_json::to_string(&LinMap::identity(3)).unwrap();
    let n3 = write(dir.path(), "n3.json", &n3);
    for args in [
        vec!["classify-sl2", "--map", bad.as_str()],
        vec!["classify-sl2", "--map", n3.as_str()],
        vec!["classify-sl2", "--map", "/nonexistent/map.json"],
        vec!["counterexample", "--n", "2"],
        vec!["counterexample", "--n", "3", "--alpha", "0"],
        vec!["counterexample", "--n", "3", "--alpha", "1/0"],
        vec!["no-such-command"],
    ] {
        let out = sl_local(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(sl_local(&["--help"]).status.code(), Some(0));
}

#[test]
fn certify_default_and_custom_points() {
    let dir = tempfile::tempdir().unwrap();
    let delta = DeltaAlpha::new(3, int(2)).unwrap();
    let map = write(
        dir.path(),
        "delta.json",
        &serde_json::to_string(&delta.build()).unwrap(),
    );

    let out = sl_local(&["certify", "--map", &map]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "certified-on-set");
    assert_eq!(v["certificates"].as_array().unwrap().len(), 8);

    let points = write(
        dir.path(),
        "points.json",
        r#"[{"n":3,"matrix":[["1","0","0"],["0","-1","0"],["0","0","0"]]},
            {"n":3,"coords":["1","1","0","0","0","0","0","0"]}]"#,
    );
    let out = sl_local(&["certify", "--map", &map, "--points", &points]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "not a local automorphism");
    assert_eq!(v["certificates"].as_array().unwrap().len(), 1);
    assert_eq!(v["refutations"].as_array().unwrap().len(), 1);
}

#[test]
fn witness_similar_and_not() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", r#"[["1","1"],["0","1"]]"#);
    let y = write(dir.path(), "y.json", r#"[["1","0"],["1","1"]]"#);
    let id = write(dir.path(), "id.json", r#"[["1","0"],["0","1"]]"#);

    let out = sl_local(&["witness", "--x", &x, "--y", &y]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["similar"], true);
    assert_eq!(v["outcome"], "found");
    assert_eq!(
        v["x_invariant_factors"],
        serde_json::json!([["1", "-2", "1"]])
    );

    let out = sl_local(&["witness", "--x", &x, "--y", &id]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["outcome"], "not-similar");
    assert!(v["witness"].is_null());
}

#[test]
fn out_flag_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let report = report.to_str().unwrap();
    let out = sl_local(&["counterexample", "--n", "4", "--alpha=-3", "--out", report]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["alpha"], "-3");
    assert_eq!(v["rank_of_delta_squared_image"], 2);
    assert_eq!(v["direct_refutation_tier"], "pairs");
    let again = sl_local(&["counterexample", "--n", "4", "--alpha", "-3"]);
    assert_eq!(fs::read(report).unwrap(), again.stdout);
}

#[test]
fn refute_seed_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(
        dir.path(),
        "id.json",
        &serde_json::to_string(&LinMap::identity(2)).unwrap(),
    );
    let out = sl_local(&["refute", "--map", &map, "--budget", "5", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["verdict"], "inconclusive");
    assert_eq!(v["seed"], 42);
    // 3 basis + 6 pairs + 4 triples + 5 random
    assert_eq!(v["points_scanned"], 18);
}
