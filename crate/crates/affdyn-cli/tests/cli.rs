use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affdyn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "examples", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn error_json(o: &Output) -> serde_json::Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(err.trim().lines().count(), 1, "{}", err);
    serde_json::from_str(err.trim()).expect("stderr is one JSON line")
}

#[test]
fn lambda1_prints_root_and_factor() {
    let o = run(&["lambda1", "--matrix", "2,1,0,3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("3"));
    assert!(s.contains("T^2 - 5T + 6"));
    assert!(s.contains("(T - 3)"));
}

#[test]
fn lambda1_irrational_is_irreducible() {
    let o = run(&["--format", "json", "lambda1", "--matrix", "1,1,1,0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lambda1"], "1/2+1/2√5");
    assert!(v["factor"].is_null());
}

#[test]
fn perron_realize_and_check() {
    assert_eq!(stdout(&run(&["perron", "realize", "3", "1"])).trim(), "[[1,1],[1,2]]");
    assert_eq!(stdout(&run(&["perron", "check", "1", "-1"])).lines().next(), Some("true"));
}

#[test]
fn markov_action() {
    assert_eq!(stdout(&run(&["markov", "act", "xyz", "inf"])).trim(), "-5/2");
    let o = run(&["markov", "fixed", "xyz"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("attracting: -3/2-1/2√5"));
}

#[test]
fn parabolic_word_is_a_computation_error() {
    let o = run(&["markov", "fixed", "xy"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "computation");
}

#[test]
fn zigzag_standardize_logs_moves() {
    let o = run(&["zigzag", "standardize", "0,0,-1,-3"]);
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("0,-1,-2"));
    assert!(s.lines().skip(1).all(|l| l.starts_with("{\"move\"")));
}

#[test]
fn boundary_and_meet_read_json_files() {
    let o = run(&["boundary", "duals", &example("markov.json")]);
    assert!(stdout(&o).contains("Z_Ex = Ey:1/2,Ez:1/2"));
    assert_eq!(stdout(&run(&["boundary", "classify", &example("markov.json")])).trim(), "cycle");
    let o = run(&["meet", &example("markov.json"), "Ex:1", "Ey:1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn eigenval_from_spec() {
    let o = run(&["eigenval", "--spec", &example("fixture-s2-f.json")]);
    let s = stdout(&o);
    assert!(s.contains("lambda1: 2") && s.contains("type: divisorial"), "{}", s);
}

#[test]
fn degree_growth_csv() {
    let o = run(&["degree-growth", "--map", "x*y, x", "-n", "6"]);
    assert_eq!(stdout(&o), "n,degree\n1,2\n2,3\n3,5\n4,8\n5,13\n6,21\n");
    let par = run(&["degree-growth", "--map", "u*v, 2*v^2-1", "-n", "5"]);
    let seq = run(&["--sequential", "degree-growth", "--map", "u*v, 2*v^2-1", "-n", "5"]);
    assert_eq!(par.stdout, seq.stdout);
}

#[test]
fn fixtures_verify_passes() {
    let o = run(&["fixtures", "verify"]);
    let s = stdout(&o);
    assert!(o.status.success(), "{}", s);
    assert!(s.lines().filter(|l| l.starts_with("PASS ")).count() >= 30);
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        &["lambda1", "--matrix", "1,2"][..],
        &["markov", "act", "xq", "0"],
        &["degree-growth", "--map", "x^2", "-n", "3"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{:?}", args);
        assert_eq!(error_json(&o)["error"], "parse");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn computation_errors_exit_one() {
    for args in [&["lambda1", "--matrix", "-1,1,1,0"][..], &["lambda1", "--matrix", "1,1,1,1"], &["perron", "check", "0", "1"]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{:?}", args);
        assert_eq!(error_json(&o)["error"], "computation");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "markov", "act", "xzyx", "3/7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn markov_generators_are_free_up_to_length() {
    let o = run(&["markov", "free", "--max-len", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "no relation up to length 5");
    assert_eq!(run(&["markov", "free", "-L", "40"]).status.code(), Some(2));
}
