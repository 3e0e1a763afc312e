use std::path::Path;
use std::process::{Command, Output};

use orbit_forge::{parse_state, random_state, LocalUnitary};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbit-forge"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("one JSON document")
}

#[test]
fn analyze_ghz_reports_orbit_data() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["catalog", "ghz", "-o", "ghz.json"]).status.success());
    let out = run(dir.path(), &["analyze", "ghz.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("orbit_dim: 8, invariant_count: 8, stabilizer_dim: 2"));
    assert!(stdout(&out).contains("u1^2"));
}

#[test]
fn bounds_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["bounds", "--n", "3"]);
    assert_eq!(stdout(&out), "naive: 4, reduced: 6\n");
    let v = json(&run(dir.path(), &["bounds", "--n", "3", "--json"]));
    assert_eq!(v["result"]["reduced"], 6);
    assert_eq!(v["config"]["command"], "bounds");
    assert_eq!(v["config"]["seed"], 0);
    assert_eq!(v["config"]["mode"], "reduced");
    assert_eq!(v["config"]["trials"], 1000);
}

#[test]
fn equiv_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = random_state(3, 21).unwrap();
    let b = LocalUnitary::random(3, &mut orbit_forge::rng::stream(22)).apply(&a).unwrap();
    std::fs::write(dir.path().join("a.json"), a.to_json()).unwrap();
    std::fs::write(dir.path().join("b.json"), b.to_json()).unwrap();
    let same = run(dir.path(), &["equiv", "a.json", "b.json", "--witness", "--json"]);
    assert_eq!(same.status.code(), Some(0));
    let v = json(&same);
    assert_eq!(v["result"]["fingerprints_match"], true);
    assert!(v["result"]["witness"]["residual"].as_f64().unwrap() <= 1e-6);

    assert!(run(dir.path(), &["catalog", "ghz", "-o", "g.json"]).status.success());
    let diff = run(dir.path(), &["equiv", "a.json", "g.json"]);
    assert_eq!(diff.status.code(), Some(3));
    assert!(diff.stderr.is_empty());
}

#[test]
fn usage_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bogus = run(dir.path(), &["frobnicate"]);
    assert_eq!(bogus.status.code(), Some(1));
    assert!(bogus.stdout.is_empty() && !bogus.stderr.is_empty());

    assert_eq!(run(dir.path(), &["bounds"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(run(dir.path(), &["family4", "--a", "x", "--b", "0", "--c", "0", "--d", "0"]).status.code(), Some(1));

    let missing = run(dir.path(), &["analyze", "nope.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(missing.stdout.is_empty());

    std::fs::write(dir.path().join("bad.json"), r#"{"n": 2, "amplitudes": [[1, 0]]}"#).unwrap();
    assert_eq!(run(dir.path(), &["analyze", "bad.json"]).status.code(), Some(2));

    assert!(run(dir.path(), &["catalog", "ghz", "-o", "g.json"]).status.success());
    let wrong_n = run(dir.path(), &["schmidt", "g.json"]);
    assert_eq!(wrong_n.status.code(), Some(2));
    assert_eq!(run(dir.path(), &["catalog", "w"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["bounds", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn random_and_catalog_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["random", "--n", "4", "--seed", "9", "-o", "r.json"]).status.success());
    let written = parse_state(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(written, random_state(4, 9).unwrap());

    let out = run(dir.path(), &["catalog", "canonical3", "1", "0.5", "0.3", "1.1", "0.4", "-2.2"]);
    assert!(out.status.success());
    let state = parse_state(&stdout(&out)).unwrap();
    assert_eq!(state.n(), 3);
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["random", "--n", "3", "--seed", "4", "-o", "r.json"]).status.success());
    for args in [
        &["canonical3", "r.json", "--json", "--seed", "3"][..],
        &["invariants", "r.json", "--json", "--trials", "20"][..],
        &["classify", "r.json", "--json"][..],
        &["case-table", "--samples", "2", "--json", "--seed", "5"][..],
    ] {
        let first = run(dir.path(), args);
        let second = run(dir.path(), args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        let v = json(&first);
        assert!(v.get("config").is_some() && v.get("result").is_some());
    }
}

#[test]
fn subcommand_outputs() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["catalog", "singlet", "-o", "s.json"]).status.success());
    let v = json(&run(dir.path(), &["schmidt", "s.json", "--json"]));
    assert!((v["result"]["phi"].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);

    let v = json(&run(dir.path(), &["classify", "s.json", "--json"]));
    assert_eq!(v["result"]["label"], "su2");
    assert_eq!(v["result"]["basis"]["coefficients"].as_array().unwrap().len(), 3);

    let out = run(dir.path(), &["family4", "--a", "0", "--b", "0", "--c", "0.6", "--d", "0,0.6"]);
    assert!(stdout(&out).contains("u1+su2"));
    let v = json(&run(dir.path(), &["family4", "--a", "1", "--b", "-1", "--c", "0", "--d", "0", "--json"]));
    assert_eq!(v["result"]["stabilizer"]["flip_symmetric"], true);

    let table = run(dir.path(), &["case-table", "--samples", "2"]);
    assert!(table.status.success());
    assert!(stdout(&table).lines().skip(1).all(|l| l.ends_with("ok")));

    let v = json(&run(dir.path(), &["case-table", "--samples", "1", "--json"]));
    let row = &v["result"][0];
    for key in ["case", "params", "expected_dim", "measured_dim", "derived_dim", "label", "flip"] {
        assert!(row.get(key).is_some(), "{key}");
    }

    std::fs::write(
        dir.path().join("p.json"),
        r#"{"n": 2, "degree": 2, "perms": [[1, 2], [2, 1]], "label": "mine"}"#,
    )
    .unwrap();
    let out = run(dir.path(), &["invariants", "s.json", "--pattern", "p.json", "--trials", "10"]);
    assert!(stdout(&out).contains("pattern mine: 0.5"));
    let mismatch = run(dir.path(), &["catalog", "ghz", "-o", "g.json"]);
    assert!(mismatch.status.success());
    assert_eq!(run(dir.path(), &["invariants", "g.json", "--pattern", "p.json"]).status.code(), Some(2));
}

#[test]
fn full_mode_changes_generator_count() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["catalog", "ghz", "-o", "g.json"]).status.success());
    let v = json(&run(dir.path(), &["analyze", "g.json", "--mode", "full", "--json"]));
    assert_eq!(v["result"]["orbit"]["orbit_dim"], 8);
    assert_eq!(v["result"]["orbit"]["stabilizer_dim"], 4);
}

#[test]
fn bounds_formula_for_small_n() {
    let dir = tempfile::tempdir().unwrap();
    for n in 1..=6i64 {
        let out = run(dir.path(), &["bounds", "--n", &n.to_string()]);
        let total = 1i64 << (n + 1);
        assert_eq!(stdout(&out), format!("naive: {}, reduced: {}\n", total - 4 * n, total - (3 * n + 1)));
    }
}
