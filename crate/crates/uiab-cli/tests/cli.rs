use std::path::PathBuf;
use std::process::{Command, Output};

fn uiab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uiab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scenario(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenarios", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn scratch(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("uiab-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn demo_prints_lambda_eta() {
    let o = uiab(&["demo", "lambda-s1-plus"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("λη = A⊗1 - 1⊗A"));
}

#[test]
fn broken_scenario_fails_with_witness() {
    let o = uiab(&["check", &scenario("broken.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("- input: `U⊗U`"));
}

#[test]
fn shipped_scenarios_pass() {
    for name in ["minimal.json", "lambda-s1-plus-w6.json", "tstar-s1.json", "rp2.json"] {
        let o = uiab(&["report", &scenario(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn transition_reported_with_cone_flag() {
    let o = uiab(&["homology", "tstar-s1", "--cone"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Φ_* ≠ id"));
    assert!(!stdout(&uiab(&["homology", "tstar-s1"])).contains("Φ_*"));
}

#[test]
fn torsion_depends_on_ring() {
    let z = stdout(&uiab(&["homology", &scenario("rp2.json")]));
    let q = stdout(&uiab(&["homology", &scenario("rp2.json"), "--ring", "Q"]));
    assert!(z.contains("H_1 = Z/2"));
    assert!(q.contains("H_1 = 0"));
}

#[test]
fn unknown_fixture_lists_catalog() {
    let o = uiab(&["demo", "lambda-s2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("omega-s1-minus"));
    let o = uiab(&["check", "no-such-thing"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn schema_errors_have_their_own_code() {
    let bad = r#"{"schema_version": 1, "name": "bad",
        "module": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}],
        "mu": {"degree": 0, "table": {"1⊗1": [["1", "1"]], "1⊗x": [["1", "1"]]}},
        "lambda": {"degree": -1}, "eta": [["1", "1"]]}"#;
    let o = uiab(&["check", &scratch("bad.json", bad)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains(r#"mu.table["1⊗x"][0]"#), "{}", stderr(&o));

    let o = uiab(&["check", &scratch("syntax.json", "{\"schema_version\": 1,\n \"name\": }")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 2 column"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(uiab(&[]).status.code(), Some(2));
    assert_eq!(uiab(&["report", "--format", "xml", "lambda-s3"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let a = uiab(&["report", "lambda-s1-plus", "omega-s3", "tstar-s1"]);
    let b = uiab(&["report", "lambda-s1-plus", "omega-s3", "tstar-s1"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).starts_with('{'));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_reingests() {
    let o = uiab(&["export", "omega-s1-plus", "--window", "7", "--ring", "GF(5)"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("export.json", &stdout(&o));
    let r = uiab(&["report", &path, "--format", "md"]);
    assert_eq!(r.status.code(), Some(0), "{}", stdout(&r));
    assert!(stdout(&r).contains("over GF(5)"));
}
