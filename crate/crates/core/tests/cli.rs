use std::process::{Command, Output};

use serde_json::Value;

const COFINITE: &str = r#"{"universe":{"kind":"naturals"},"field":{"kind":"cofinite"},"charge":{"kind":"density"}}"#;
const PERIODIC: &str = r#"{"universe":{"kind":"naturals"},"field":{"kind":"periodic"},"charge":{"kind":"density"}}"#;
const FOUR: &str = r#"{"universe":{"kind":"finite","points":[0,1,2,3]},"field":{"kind":"atoms","atoms":[[0,1],[2],[3]]},"charge":{"kind":"atom-weights","weights":{"0":"1/2","1":"1/2","2":"0"}}}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chargelab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("json output"))
}

fn write(dir: &std::path::Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn files_and_finite_outer_charge() {
    let dir = tempfile_dir("files");
    let space = write(&dir, "cofinite.json", COFINITE);
    let o = run(&["outer", "--space", &space, "--set", r#"{"kind":"finite","elements":[1,2,3]}"#]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0/1");
    let f = write(&dir, "reciprocal.json", r#"{"kind":"reciprocal"}"#);
    let g = write(&dir, "zero.json", r#"{"kind":"constant","value":"0"}"#);
    let o = run(&["distance", "--space", &space, "--f", &f, "--g", &g]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0/1");
}

fn tempfile_dir(name: &str) -> std::path::PathBuf {
    let d = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}"));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn verify_exhaustive_suite() {
    let o = run(&["verify", "fieldplusnull", "--max-points", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("0 failures"), "{}", stdout(&o));
    let o = run(&["verify", "--theorem", "t1-equivalence", "--instances", "50", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_reports_are_deterministic() {
    let a = run(&["verify", "integration-laws", "--instances", "40", "--seed", "9", "--format", "json"]);
    let b = run(&["verify", "integration-laws", "--instances", "40", "--seed", "9", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verdict_exit_codes() {
    let (code, v) = json(&["pj", "--space", FOUR, "--set", r#"{"kind":"finite","elements":[0]}"#]);
    assert_eq!(code, 1);
    assert_eq!(v["inside"], false);
    assert_eq!(v["outer"], "1/2");
    let (code, _) = json(&["pj", "--space", FOUR, "--set", r#"{"kind":"finite","elements":[0,1,3]}"#]);
    assert_eq!(code, 0);
    let (code, v) = json(&["measurable", "--space", COFINITE, "--f", r#"{"kind":"linear"}"#]);
    assert_eq!(code, 1);
    assert_eq!(v["measurable"], false);
    let (code, v) = json(&["smooth", "--space", COFINITE, "--f", r#"{"kind":"reciprocal"}"#]);
    assert_eq!((code, v["smooth"].clone()), (0, Value::Bool(true)));
    let (code, _) = json(&["aeq", "--space", COFINITE, "--f", r#"{"kind":"reciprocal"}"#, "--g", r#"{"kind":"constant","value":"0"}"#]);
    assert_eq!(code, 0);
}

#[test]
fn input_errors_are_pointered() {
    let (code, v) = json(&["outer", "--space", COFINITE, "--set", r#"{"kind":"finite","elements":[1,"x"]}"#]);
    assert_eq!(code, 2);
    assert_eq!(v["pointer"], "--set/elements/1");
    let o = run(&["outer", "--space", "{bad", "--set", "{}"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--space"));
    let o = run(&["atoms", "--space", COFINITE]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn integrals_and_norms() {
    let (code, v) = json(&["integrate", "--space", COFINITE, "--f", r#"{"kind":"reciprocal"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "0/1");
    assert_eq!(v["method"], "ae-reduction");
    let evens = r#"{"kind":"indicator","set":{"kind":"eventually-periodic","period":"01"}}"#;
    let (_, v) = json(&["integrate", "--space", PERIODIC, "--f", evens]);
    assert_eq!(v["value"], "1/2");
    assert_eq!(v["method"], "simple-direct");
    let (code, v) = json(&["norm", "--space", PERIODIC, "--f", evens, "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["integral"], "1/2");
    let (code, _) = json(&["integrate", "--space", COFINITE, "--f", r#"{"kind":"linear"}"#]);
    assert_eq!(code, 2);
}

#[test]
fn period_cap_override() {
    let set = r#"{"kind":"eventually-periodic","period":"0010010"}"#;
    let ok = run(&["outer", "--space", PERIODIC, "--set", set]);
    assert_eq!(ok.status.code(), Some(0));
    let capped = Command::new(env!("CARGO_BIN_EXE_chargelab"))
        .env("CHARGELAB_PERIOD_CAP", "4")
        .args(["outer", "--space", PERIODIC, "--set", set])
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2), "{}", String::from_utf8_lossy(&capped.stderr));
}

#[test]
fn emitted_documents_round_trip() {
    let (code, completed) = json(&["complete", "--space", FOUR]);
    assert_eq!(code, 0);
    let text = completed.to_string();
    let (code, again) = json(&["complete", "--space", &text]);
    assert_eq!(code, 0);
    assert_eq!(again, completed);
    let (code, v) = json(&["space-validate", "--space", &text]);
    assert_eq!((code, v["complete"].clone()), (0, Value::Bool(true)));

    let f = r#"{"kind":"pointwise","values":["2","2","1/2","7"]}"#;
    let (code, chain) = json(&["fn-to-chain", "--space", FOUR, "--f", f]);
    assert_eq!(code, 0);
    let (code, back) = json(&["chain-to-fn", "--space", FOUR, "--chain", &chain.to_string()]);
    assert_eq!(code, 0);
    let (_, d) = json(&["distance", "--space", FOUR, "--f", f, "--g", &back.to_string()]);
    assert_eq!(d["distance"], "0/1");

    let (code, seq) = json(&["dyadic", "--space", FOUR, "--f", f, "--depth", "3"]);
    assert_eq!(code, 0);
    for t in seq["terms"].as_array().unwrap() {
        let (code, _) = json(&["measurable", "--space", FOUR, "--f", &t["term"].to_string()]);
        assert_eq!(code, 0);
    }
    let s = r#"{"kind":"eventually-periodic","preperiod":"1","period":"011"}"#;
    let (_, v) = json(&["outer", "--space", PERIODIC, "--set", s]);
    assert_eq!(v["outer"], "2/3");
}

#[test]
fn subfield_commands() {
    let space = r#"{"universe":{"kind":"finite","points":[0,1,2]},"field":{"kind":"atoms","atoms":[[0],[1],[2]]},"charge":{"kind":"atom-weights","weights":{"0":"0","1":"1/2","2":"1/2"}}}"#;
    let coarse = r#"{"kind":"atoms","atoms":[[0,1],[2]]}"#;
    let (code, v) = json(&["iso-check", "--space", space, "--subfield", coarse]);
    assert_eq!(code, 0);
    assert_eq!(v["lp_equal"], false);
    assert_eq!(v["classes_isomorphic"], true);
    let (code, v) = json(&["nullmod", "--space", space, "--subfield", coarse, "--f", r#"{"kind":"pointwise","values":["1","1","0"]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["equal_ae"], true);
    let w1 = r#"{"universe":{"kind":"finite","points":[0,1]},"field":{"kind":"atoms","atoms":[[0],[1]]},"charge":{"kind":"atom-weights","weights":{"0":"1/4","1":"1/4"}}}"#;
    let w2 = r#"{"universe":{"kind":"finite","points":[0,1]},"field":{"kind":"atoms","atoms":[[0],[1]]},"charge":{"kind":"atom-weights","weights":{"0":"1/2","1":"1/2"}}}"#;
    let (code, v) = json(&["order-check", "--space", w1, "--space2", w2, "--f", r#"{"kind":"pointwise","values":["1","3"]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["chain_dominated"], true);
    assert_eq!(v["integral_1"], "1/1");
    let (code, v) = json(&["enumerate", "--max-points", "4"]);
    assert_eq!((code, v["count"].clone()), (0, Value::from(15)));
    let (code, v) = json(&["quotient", "--space", FOUR]);
    assert_eq!(code, 0);
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}
