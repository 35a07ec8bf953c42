mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hydroham::catalog::catalog;
use hydroham::cli::{self, Cli, OperatorSpecFile, ReportFile, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use hydroham::exact::Rational;
use hydroham::tensor::Mode;

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hydroham"));
    c.env_remove(cli::SEED_ENV);
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn emit(dir: &TempDir, id: &str) -> PathBuf {
    let o = run(&["catalog", "--id", id]);
    assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stderr(&o));
    write(dir, &format!("{id}.json"), &stdout(&o))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// The two-component operator: g = antidiag, g̃ = [[-2u1, u2], [u2, 0]].
const TWO_COMPONENT: &str = r#"{
  "n": 2, "d": 2,
  "metrics": [
    {"constant": [["0", "1"], ["1", "0"]], "linear": []},
    {"constant": [["0", "0"], ["0", "0"]],
     "linear": [{"i": 1, "j": 1, "k": 1, "coeff": "COEFF"}, {"i": 1, "j": 2, "k": 2, "coeff": "1"}]}
  ]
}"#;

fn two_component(coeff: &str) -> String {
    TWO_COMPONENT.replace("COEFF", coeff)
}

#[test]
fn verify_two_component_passes() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "op.json", &two_component("-2"));
    let o = run(&["verify", s(&p)]);
    assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stderr(&o));
    let rep: ReportFile = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rep.verdict);
    assert_eq!(rep.mode, Mode::Symbolic);
    assert!(rep.conditions.iter().all(|c| c.passed));
    assert_eq!(rep.segre.as_ref().unwrap().symbol(), "[2]");
    // Lossless round trip with stable field order.
    assert_eq!(rep.to_json() + "\n", stdout(&o));
}

/// Independent residual: for constant `η` and `g̃^{ij} = c^{ij}_k u^k`, the
/// Killing residual is `η^{is} c^{jk}_s + η^{js} c^{ki}_s + η^{ks} c^{ij}_s`.
fn killing_oracle(c: &dyn Fn(usize, usize, usize) -> i64, i: usize, j: usize, k: usize) -> i64 {
    let eta = |a: usize, b: usize| i64::from(a + b == 1);
    (0..2).map(|s| eta(i, s) * c(j, k, s) + eta(j, s) * c(k, i, s) + eta(k, s) * c(i, j, s)).sum()
}

#[test]
fn verify_perturbed_two_component_fails_with_killing_witness() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", &two_component("-3"));
    let o = run(&["verify", s(&p), "--output", "text"]);
    assert_eq!(o.status.code(), Some(EXIT_FAIL));
    let text = stdout(&o);
    assert!(text.contains("verdict: FAIL"), "{text}");
    assert!(text.contains("[FAIL] killing"), "{text}");

    let o = run(&["verify", s(&p)]);
    let rep: ReportFile = serde_json::from_str(&stdout(&o)).unwrap();
    let killing = rep.conditions.iter().find(|c| c.name == "killing").unwrap();
    assert!(!killing.passed);
    let w = killing.witness.as_ref().unwrap();
    let idx: Vec<usize> = w.indices.iter().map(|x| x - 1).collect();
    let coeffs = |i: usize, j: usize, k: usize| match (i.min(j), i.max(j), k) {
        (0, 0, 0) => -3,
        (0, 1, 1) => 1,
        _ => 0,
    };
    let expected = killing_oracle(&coeffs, idx[0], idx[1], idx[2]);
    assert_ne!(expected, 0);
    assert_eq!(w.residual.parse::<Rational>().unwrap(), Rational::from(expected));
}

#[test]
fn malformed_input_exits_with_usage_code() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("truncated.json", "{\"n\": 2".to_string()),
        ("unknown-field.json", two_component("-2").replace("\"d\": 2", "\"d\": 2, \"extra\": 1")),
        (
            "duplicate.json",
            two_component("-2").replace(
                "{\"i\": 1, \"j\": 2, \"k\": 2, \"coeff\": \"1\"}",
                "{\"i\": 1, \"j\": 2, \"k\": 2, \"coeff\": \"1\"}, {\"i\": 1, \"j\": 2, \"k\": 2, \"coeff\": \"1\"}",
            ),
        ),
        (
            "asymmetric.json",
            two_component("-2").replace(
                "{\"i\": 1, \"j\": 2, \"k\": 2, \"coeff\": \"1\"}",
                "{\"i\": 1, \"j\": 2, \"k\": 2, \"coeff\": \"1\"}, {\"i\": 2, \"j\": 1, \"k\": 2, \"coeff\": \"2\"}",
            ),
        ),
        ("out-of-range.json", two_component("-2").replace("\"k\": 2", "\"k\": 3")),
        ("float.json", two_component("-2").replace("\"-2\"", "-2.0")),
        ("wrong-d.json", two_component("-2").replace("\"d\": 2", "\"d\": 3")),
    ];
    for (name, body) in cases {
        let p = write(&dir, name, &body);
        let o = run(&["verify", s(&p)]);
        assert_eq!(o.status.code(), Some(EXIT_USAGE), "{name}: {}", stdout(&o));
        assert!(stderr(&o).starts_with("error:"), "{name}");
    }
    let o = run(&["verify", "/nonexistent/op.json"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn both_orders_of_a_symmetric_term_are_accepted() {
    let body = two_component("-2").replace(
        "{\"i\": 1, \"j\": 2, \"k\": 2, \"coeff\": \"1\"}",
        "{\"i\": 1, \"j\": 2, \"k\": 2, \"coeff\": \"1\"}, {\"i\": 2, \"j\": 1, \"k\": 2, \"coeff\": \"1\"}",
    );
    let one = OperatorSpecFile::from_json(&body).unwrap().to_spec().unwrap();
    let other = OperatorSpecFile::from_json(&two_component("-2")).unwrap().to_spec().unwrap();
    assert_eq!(one.metrics(), other.metrics());
}

#[test]
fn sampled_reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = emit(&dir, "mokhov-n4");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = run(&["verify", s(&p), "--mode", "sampled", "--seed", "17", "--out", s(out)]);
        assert_eq!(o.status.code(), Some(EXIT_PASS));
        assert!(o.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let rep: ReportFile = serde_json::from_slice(&ta).unwrap();
    assert_eq!((rep.mode, rep.seed), (Mode::Sampled, 17));
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let p = emit(&dir, "two-component");
    let o = bin().args(["verify", s(&p), "--mode", "sampled"]).env(cli::SEED_ENV, "99").output().unwrap();
    let rep: ReportFile = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.seed, 99);
    // The flag wins over the environment.
    let o = bin().args(["verify", s(&p), "--seed", "5"]).env(cli::SEED_ENV, "99").output().unwrap();
    let rep: ReportFile = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.seed, 5);
}

#[test]
fn default_mode_depends_on_size() {
    let dir = TempDir::new().unwrap();
    for (id, mode) in [("mokhov-n5", Mode::Symbolic), ("mokhov-n6", Mode::Sampled)] {
        let p = emit(&dir, id);
        let o = run(&["verify", s(&p)]);
        let rep: ReportFile = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(rep.mode, mode, "{id}");
        assert!(rep.verdict);
    }
}

#[test]
fn timing_is_opt_in() {
    let dir = TempDir::new().unwrap();
    let p = emit(&dir, "two-component");
    let plain: ReportFile = serde_json::from_str(&stdout(&run(&["verify", s(&p)]))).unwrap();
    assert!(plain.timing_ms.is_none());
    let timed: ReportFile = serde_json::from_str(&stdout(&run(&["verify", s(&p), "--timing"]))).unwrap();
    assert!(timed.timing_ms.is_some());
}

#[test]
fn every_catalog_entry_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    for e in catalog().unwrap() {
        let path = dir.path().join(format!("{}.json", e.id));
        let emit = Cli::parse_from(["hydroham", "catalog", "--id", &e.id, "--out", s(&path)]);
        let body = cli::execute(&emit).unwrap().body;
        std::fs::write(&path, body).unwrap();
        let verify = Cli::parse_from(["hydroham", "verify", s(&path)]);
        let outcome = cli::execute(&verify).unwrap();
        assert_eq!(outcome.code, EXIT_PASS, "{}: {}", e.id, outcome.body);
    }
}

#[test]
fn catalog_emits_mokhov_three() {
    let o = run(&["catalog", "--id", "mokhov", "--n", "3"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let file = OperatorSpecFile::from_json(&stdout(&o)).unwrap();
    let spec = file.to_spec().unwrap();
    assert_eq!(spec.metric(1), &common::metric(3, &[], &[(1, 1, 1, -4), (1, 2, 2, -1), (1, 3, 3, 2), (2, 2, 3, 2)]));
    assert_eq!(spec.metric(0), &common::antidiag(3));
}

#[test]
fn catalog_lists_four_component_families() {
    let o = run(&["catalog", "--n", "4", "--output", "text"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    for prefix in ["blocks-2-2-split-", "blocks-2-2-opposite-", "blocks-3-1-positive-", "blocks-3-1-negative-", "block-4-", "complex-pair-"] {
        assert!(ids.iter().any(|i| i.starts_with(prefix)), "{prefix}");
    }
    let o = run(&["catalog", "--n", "4"]);
    let manifest: hydroham::catalog::Manifest = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(manifest.entries.iter().all(|e| e.n == 4));
    assert_eq!(manifest.entries.len(), ids.len());
}

#[test]
fn catalog_unknown_and_ambiguous_ids() {
    let o = run(&["catalog", "--id", "no-such-entry"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&o).contains("available ids: two-component"));
    let o = run(&["catalog", "--id", "mokhov"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&o).contains("mokhov-n7"));
}

#[test]
fn catalog_kappa_override() {
    let a = OperatorSpecFile::from_json(&stdout(&run(&["catalog", "--id", "jordan-block-n4"]))).unwrap();
    let b = OperatorSpecFile::from_json(&stdout(&run(&["catalog", "--id", "jordan-block-n4", "--kappa", "-5/2"]))).unwrap();
    assert!(a.description.as_ref().unwrap().contains("kappa1 = 2"));
    assert!(b.description.as_ref().unwrap().contains("kappa1 = -5/2"));
    assert_ne!(a.metrics, b.metrics);
}

fn classify_json(path: &Path) -> serde_json::Value {
    let o = run(&["classify", s(path)]);
    assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn classify_nonconstant_three_component() {
    let dir = TempDir::new().unwrap();
    let v = classify_json(&emit(&dir, "three-component-nonconstant-eigenvalue"));
    assert_eq!(v["symbol"], "[3]");
    assert_eq!(v["eigenvalue_polynomials"], serde_json::json!(["1/1*u3"]));
    assert_eq!(v["best_match"], "three-component-nonconstant-eigenvalue");
    assert_eq!(v["reducible_hint"], false);
}

#[test]
fn classify_complex_pair() {
    let dir = TempDir::new().unwrap();
    let v = classify_json(&emit(&dir, "complex-pair-normal"));
    let mut polys: Vec<String> =
        v["eigenvalue_polynomials"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
    polys.sort();
    assert_eq!(polys, ["1/1*u3 + i*(-1/1*u4)", "1/1*u3 + i*(1/1*u4)"]);
    assert_eq!(v["reducible_hint"], false);
}

#[test]
fn classify_direct_sum_is_reducible() {
    let dir = TempDir::new().unwrap();
    let v = classify_json(&emit(&dir, "two-component-plus-constant"));
    assert_eq!(v["symbol"], "[2,1]");
    assert_eq!(v["eigenvalue_polynomials"].as_array().unwrap().len(), 2);
    assert_eq!(v["reducible_hint"], true);
    assert_eq!(v["best_match"], "two-component-plus-constant");
}

#[test]
fn classify_accepts_non_hamiltonian_input() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", &two_component("-3"));
    let v = classify_json(&p);
    assert_eq!(v["symbol"], "[2]");
}

#[test]
fn classify_diagonalizable_pair() {
    // g = identity, g̃ = u1 (E12 + E21): eigenvalues ±u1.
    let dir = TempDir::new().unwrap();
    let body = r#"{"n": 2, "d": 2, "metrics": [
        {"constant": [["1", "0"], ["0", "1"]], "linear": []},
        {"constant": [["0", "0"], ["0", "0"]], "linear": [{"i": 1, "j": 2, "k": 1, "coeff": "1"}]}
    ]}"#;
    let v = classify_json(&write(&dir, "split.json", body));
    assert_eq!(v["symbol"], "[1,1]");
    let mut polys: Vec<&str> = v["eigenvalue_polynomials"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    polys.sort();
    assert_eq!(polys, ["-1/1*u1", "1/1*u1"]);
    assert_eq!(v["reducible_hint"], true);
}

#[test]
fn classify_rejects_irrational_eigenvalues() {
    // L = [[0, u1], [u1, u2]] has eigenvalues (u2 ± sqrt(u2^2 + 4 u1^2)) / 2.
    let dir = TempDir::new().unwrap();
    let body = r#"{"n": 2, "d": 2, "metrics": [
        {"constant": [["1", "0"], ["0", "1"]], "linear": []},
        {"constant": [["0", "0"], ["0", "0"]],
         "linear": [{"i": 1, "j": 2, "k": 1, "coeff": "1"}, {"i": 2, "j": 2, "k": 2, "coeff": "1"}]}
    ]}"#;
    let o = run(&["classify", s(&write(&dir, "irrational.json", body))]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&o).contains("eigenvalues outside"), "{}", stderr(&o));
}

#[test]
fn classify_needs_two_metrics() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"n": 1, "d": 1, "metrics": [{"constant": [["1"]], "linear": []}]}"#;
    let p = write(&dir, "one.json", body);
    assert_eq!(run(&["classify", s(&p)]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["verify", s(&p)]).status.code(), Some(EXIT_PASS));
}

#[test]
fn normalize_first_branch() {
    let o = run(&["normalize", "--n", "5", "--xi", "1,2,3,4"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normal_form"], "mu(5;0)");
    assert_eq!(v["constant_part"], "zero");
}

#[test]
fn normalize_seven_components_keeps_mu_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let mut xi = vec!["1".to_string()];
        xi.extend((0..5).map(|_| rng.gen_range(-9i64..=9).to_string()));
        let xi = xi.join(",");
        let o = run(&["normalize", "--n", "7", "--xi", &xi]);
        assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stderr(&o));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let nf = v["normal_form"].as_str().unwrap();
        let rest = nf.strip_prefix("mu(7;0)").unwrap();
        if !rest.is_empty() {
            let c = rest.strip_prefix(" + ").unwrap().strip_suffix("*mu(7;2)").unwrap();
            c.parse::<Rational>().unwrap();
        }
    }
}

#[test]
fn normalize_rejects_vanishing_leading_coefficient() {
    let o = run(&["normalize", "--n", "5", "--xi", "0,1,3,4"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&o).contains("--alpha"));
    let o = run(&["normalize", "--n", "5", "--xi", "0,1,3,4", "--alpha", "1", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["normal_form"].as_str().unwrap().starts_with("mu(5;1)"));
    let o = run(&["normalize", "--n", "5", "--xi", "0,1,3,4", "--alpha", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    let o = run(&["normalize", "--n", "5", "--xi", "2,1,3,4"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    let o = run(&["normalize", "--n", "5", "--xi", "1,2"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn frobenius_command() {
    let o = run(&["frobenius", "--n", "4"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["intersection_is_mu"], true);
    assert_eq!(v["pencil_hamiltonian"], true);

    let o = run(&["frobenius", "--n", "2", "--output", "text"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    assert!(stdout(&o).contains("metric -1/1"), "{}", stdout(&o));

    let o = run(&["frobenius", "--n", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}
