use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_troprbm"));
    c.env_remove("TROPRBM_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exited normally")
}

fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"))
}

/// Runs with `--json` and checks the output against the shipped schema.
fn validated(schema: &str, args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let value: Value = serde_json::from_str(&stdout(&full)).expect("valid JSON");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path(schema)).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    value
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn slicing_counts() {
    for (n, c) in [(1, "4"), (2, "14"), (3, "104"), (4, "1882")] {
        assert_eq!(stdout(&["slicings", "--n", &n.to_string(), "--count"]).trim(), c);
    }
    assert_eq!(
        stdout(&["slicings", "--n", "3", "--count", "--strategy", "brute-force"]).trim(),
        "104"
    );
    assert_eq!(stdout(&["slicings", "--n", "2"]).lines().count(), 14);
}

#[test]
fn long_modes_are_gated() {
    assert_eq!(code(&["slicings", "--n", "5", "--count"]), 2);
    assert_eq!(code(&["dim", "--n", "4", "--k", "3", "--strategy", "exhaustive"]), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["slicings"]), 2);
    assert_eq!(code(&["member-tm1", "--point", "/nonexistent/q.txt"]), 2);
    assert_eq!(code(&["phi"]), 2);
    assert_eq!(code(&["codes", "hamming", "--l", "9"]), 2);
    assert_eq!(code(&["--threads", "0", "fan", "sphere-fvector"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_params = write(dir.path(), "p.json", r#"{"W": [["1"]], "b": ["x"], "c": ["0"]}"#);
    assert_eq!(code(&["phi", "--params", &bad_params]), 2);
    let extra = write(dir.path(), "e.json", r#"{"W": [["1"]], "b": ["1"], "c": ["0"], "z": 1}"#);
    assert_eq!(code(&["phi", "--params", &extra]), 2);
    let not_dist = write(dir.path(), "d.txt", "1/2\n1/3\n");
    assert_eq!(code(&["rbm", "check", "--p", &not_dist]), 2);
    let three = write(dir.path(), "q.txt", "0\n1\n2\n");
    assert_eq!(code(&["member-tm1", "--point", &three]), 2);
    let code_file = write(dir.path(), "c.txt", "n=3\n000\n001\n");
    assert_eq!(code(&["codes", "slicings", "--code", &code_file]), 2);
}

#[test]
fn headline_outputs() {
    let w = stdout(&["tropvar", "witness-2222"]);
    assert!(w.contains("prevariety: true"));
    assert!(w.contains("quartic_monomial: true"));
    assert!(w.contains("initial_form: p0000*p0110*p1010*p1101"));
    assert_eq!(stdout(&["fan", "tm13", "--fvector"]), "14 40 36 12\n");
    assert_eq!(stdout(&["fan", "sphere-fvector"]), "22 100 152 74\n");
    assert_eq!(stdout(&["fan", "homology"]), "0 3 0 0\n");
    assert_eq!(stdout(&["fan", "triangulations", "--count"]), "74\n");
    assert_eq!(stdout(&["zonotope-facets", "--n", "3"]), "40\n");
    let d = stdout(&["dim", "--n", "3", "--k", "1"]);
    assert!(d.contains("dim: 7\n"), "{d}");
}

#[test]
fn file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(
        dir.path(),
        "p.json",
        r#"{"W": [["1", "-2"]], "b": ["1/2", "0"], "c": ["-1/3"]}"#,
    );
    let point = stdout(&["phi", "--params", &params]);
    assert_eq!(point.lines().count(), 4);
    let q = write(dir.path(), "q.txt", &point);
    let m = stdout(&["member-tm1", "--point", &q]);
    assert!(m.starts_with("member: true\n"), "{m}");

    let hamming = stdout(&["codes", "hamming", "--l", "3"]);
    let h = write(dir.path(), "h.txt", &hamming);
    let a = stdout(&["codes", "analyze", "--code", &h]);
    assert!(a.contains("size: 16\nmin_distance: 3\ncovering_radius: 1\n"), "{a}");
    assert_eq!(stdout(&["codes", "slicings", "--code", &h]).lines().count(), 16);

    let joint = stdout(&["rbm", "joint", "--random", "--n", "4", "--k", "1", "--seed", "5"]);
    let p = write(dir.path(), "p.txt", &joint);
    assert!(stdout(&["rbm", "check", "--p", &p]).starts_with("verdict: pass\n"));
    assert_eq!(stdout(&["rbm", "flatten-rank", "--p", &p, "--split", "1,2"]), "2\n");
    let u = write(dir.path(), "u.txt", &"1/16\n".repeat(16));
    assert_eq!(stdout(&["rbm", "hadamard", "--p", &p, "--q", &u]), joint);

    let out = dir.path().join("out.txt");
    let o = out.to_str().unwrap();
    assert_eq!(stdout(&["--output", o, "fan", "tm13", "--fvector"]), "");
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "14 40 36 12\n");
}

#[test]
fn mixture_params_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.json",
        r#"{"lambda": "1/3", "delta": ["1/2", "1/4"], "epsilon": ["1/5", "3/4"]}"#,
    );
    let p = stdout(&["rbm", "mixture", "--params", &m]);
    let probs: Vec<&str> = p.lines().collect();
    // δ and ε are the probabilities of a 0 in each coordinate.
    assert_eq!(probs, ["17/120", "19/120", "53/120", "31/120"]);
}

#[test]
fn json_matches_schemas() {
    let dir = tempfile::tempdir().unwrap();
    validated("slicings", &["slicings", "--n", "2"]);
    validated("slicings", &["slicings", "--n", "3", "--count"]);
    validated("zonotope-facets", &["zonotope-facets", "--n", "2"]);
    validated("phi", &["phi", "--random", "--n", "3", "--k", "2", "--seed", "7"]);
    validated("infer", &["infer", "--random", "--n", "3", "--k", "2", "--seed", "7"]);
    validated("dim", &["dim", "--n", "4", "--k", "2", "--strategy", "greedy", "--seed", "1"]);
    let point = stdout(&["phi", "--random", "--n", "2", "--k", "1"]);
    let q = write(dir.path(), "q.txt", &point);
    let m = validated("member-tm1", &["member-tm1", "--point", &q]);
    assert_eq!(m["member"], Value::Bool(true));
    let off = write(dir.path(), "off.txt", "1\n0\n0\n0\n0\n1\n1\n0\n");
    let m = validated("member-tm1", &["member-tm1", "--point", &off]);
    assert_eq!(m["slicing"], Value::Null);
    validated("codes-hamming", &["codes", "hamming", "--l", "2"]);
    let b = validated("codes-bounds", &["codes", "bounds", "--n", "7"]);
    assert_eq!(b["varshamov_lower"], "16");
    validated("codes-bounds", &["codes", "bounds", "--n", "40"]);
    validated("codes-exact", &["codes", "exact"]);
    let h = write(dir.path(), "h.txt", &stdout(&["codes", "hamming", "--l", "2"]));
    validated("codes-analyze", &["codes", "analyze", "--code", &h]);
    validated("codes-slicings", &["codes", "slicings", "--code", &h]);
    let p = write(dir.path(), "p.txt", &stdout(&["rbm", "joint", "--random", "--n", "3", "--k", "2"]));
    validated("rbm-distribution", &["rbm", "joint", "--random", "--n", "3", "--k", "2"]);
    validated("rbm-distribution", &["rbm", "mixture", "--random", "--n", "3"]);
    validated("rbm-distribution", &["rbm", "hadamard", "--p", &p, "--q", &p]);
    validated("rbm-flatten-rank", &["rbm", "flatten-rank", "--p", &p]);
    validated("rbm-flatten-rank", &["rbm", "flatten-rank", "--p", &p, "--split", "2"]);
    validated("rbm-covariance", &["rbm", "covariance", "--p", &p]);
    validated("rbm-check", &["rbm", "check", "--p", &p]);
    validated("tropvar-minors", &["tropvar", "minors", "--n", "4"]);
    let f = write(dir.path(), "f.txt", "1 * p_00 p_11\n-1 * p_01 p_10\n");
    let w = write(dir.path(), "w.txt", "0\n1\n1\n0\n");
    let i = validated("tropvar-initial-form", &["tropvar", "initial-form", "--poly", &f, "--weights", &w]);
    assert_eq!(i["initial_form"], "-p01*p10");
    validated("tropvar-witness-2222", &["tropvar", "witness-2222"]);
    validated("fan-triangulations", &["fan", "triangulations"]);
    validated("fan-fvector", &["fan", "sphere-fvector"]);
    validated("fan-fvector", &["fan", "tm13", "--fvector"]);
    let tm = validated("fan-tm13", &["fan", "tm13"]);
    let exported = write(dir.path(), "tm.json", &tm.to_string());
    let h = validated("fan-homology", &["fan", "homology", "--complex", &exported]);
    assert_eq!(h["reduced_homology_ranks"], serde_json::json!([0, 3, 0, 0]));
}

#[test]
fn output_independent_of_threads_and_runs() {
    let cases: [&[&str]; 4] = [
        &["dim", "--n", "4", "--k", "2", "--strategy", "greedy", "--seed", "3"],
        &["dim", "--n", "3", "--k", "2", "--strategy", "exhaustive"],
        &["--json", "fan", "tm13"],
        &["slicings", "--n", "4"],
    ];
    for args in cases {
        let one = bin().args(["--threads", "1"]).args(args).output().unwrap();
        let four = bin().args(["--threads", "4"]).args(args).output().unwrap();
        let env = bin().env("TROPRBM_THREADS", "3").args(args).output().unwrap();
        let again = bin().args(["--threads", "4"]).args(args).output().unwrap();
        assert!(one.status.success());
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.stdout, env.stdout, "{args:?}");
        assert_eq!(four.stdout, again.stdout, "{args:?}");
    }
}
