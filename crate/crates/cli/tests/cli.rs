//! End-to-end tests of the command-line interface: exit codes, output
//! shapes, and the JSON schema field.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use posetmap::doc;
use posetmap::oracle;
use posetmap::perm::Perm;
use posetmap::pmap::PiecewiseMap;
use posetmap::point::Point;
use posetmap::region::BoxRegion;
use posetmap::rule::Rule;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_posetmap"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("posetmap-cli-test-{}-{name}", std::process::id()));
    p
}

fn write_map(name: &str, a: &PiecewiseMap) -> PathBuf {
    let path = tmp(name);
    fs::write(&path, doc::serialize_element(a)).unwrap();
    path
}

fn pt(cs: &[i64]) -> Point {
    Point::new(cs.to_vec()).unwrap()
}

fn varpi() -> PiecewiseMap {
    PiecewiseMap::cylinder_shift(3, 0, &[0, 2, 2], -1).unwrap()
}

fn non_monotone() -> PiecewiseMap {
    PiecewiseMap::from_parts(
        3,
        vec![(BoxRegion::full(3), Rule::identity(3))],
        vec![pt(&[2, 2, 2])],
        vec![(pt(&[1, 1, 1]), pt(&[2, 2, 2]))],
    )
    .unwrap()
}

#[test]
fn validate_exit_codes() {
    let good = write_map("good.json", &varpi());
    let out = run(&["validate", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("valid"));

    let bad = write_map("bad.json", &non_monotone());
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("monotone=false"));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("witness"), "{err}");

    let broken = tmp("broken.json");
    fs::write(&broken, "{not json").unwrap();
    let out = run(&["validate", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let missing = run(&["validate", "/nonexistent/file.json"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn validate_json_schema_field() {
    let good = write_map("schema.json", &varpi());
    let out = run(&["validate", "--json", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["valid"], true);
}

#[test]
fn compose_writes_output_file() {
    let w = write_map("compose-in.json", &varpi());
    let out_path = tmp("compose-out.json");
    let out = run(&[
        "compose",
        w.to_str().unwrap(),
        w.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let composed = doc::parse_element(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let expected = varpi().compose(&varpi()).unwrap();
    assert_eq!(composed, expected);
}

#[test]
fn compose_with_window_cross_check() {
    let w = write_map("compose-win.json", &varpi());
    let out = run(&[
        "compose",
        "--window",
        "6",
        w.to_str().unwrap(),
        w.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn equals_exit_codes() {
    let a = write_map("eq-a.json", &varpi());
    let b = write_map("eq-b.json", &PiecewiseMap::identity(3));
    let out = run(&["equals", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = run(&["equals", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not equal"));
}

#[test]
fn normalize_and_axis_perm() {
    let cycle = Perm::new(vec![1, 2, 0]).unwrap();
    let twisted = varpi()
        .compose(&PiecewiseMap::unit(cycle.clone()))
        .unwrap();
    let f = write_map("normalize.json", &twisted);
    let out = run(&["normalize", "--json", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    // sigma is the inverse cycle, printed as 1-based targets
    let sigma: Vec<usize> = v["sigma"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as usize)
        .collect();
    let expected: Vec<usize> = cycle.inverse().targets().iter().map(|&t| t + 1).collect();
    assert_eq!(sigma, expected);

    let out = run(&["axis-perm", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[2 3 1]"), "{}", stdout(&out));
}

#[test]
fn n_alpha_command() {
    let f = write_map("nalpha.json", &varpi());
    let out = run(&["n-alpha", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3");

    // a non-normalized element is a usage error for this command
    let u = write_map(
        "nalpha-unit.json",
        &PiecewiseMap::unit(Perm::transposition(3, 0, 1)),
    );
    let out = run(&["n-alpha", u.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn idempotent_exit_codes() {
    let e = write_map(
        "idem.json",
        &PiecewiseMap::identity_off(3, vec![pt(&[2, 1, 1])]).unwrap(),
    );
    let out = run(&["idempotent", e.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let w = write_map("idem-not.json", &varpi());
    let out = run(&["idempotent", w.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn green_names_the_witness() {
    let w = varpi();
    let moved = PiecewiseMap::unit(Perm::transposition(3, 0, 1))
        .compose(&w)
        .unwrap();
    let a = write_map("green-a.json", &moved);
    let b = write_map("green-b.json", &w);
    let out = run(&["green", "L", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("mu = [2 1 3]"), "{}", stdout(&out));

    let e = write_map(
        "green-e.json",
        &PiecewiseMap::identity_off(3, vec![pt(&[1, 1, 1])]).unwrap(),
    );
    let out = run(&["green", "D", e.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("NOT_RELATED"));

    let out = run(&["green", "X", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn class_command_lists_six() {
    let f = write_map("class.json", &varpi());
    let out = run(&["class", "L", "--json", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["size"], 6);
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
}

#[test]
fn complements_command() {
    let f = write_map("compl.json", &varpi());
    let out = run(&["complements", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dom complement (4)"), "{text}");
    assert!(text.contains("ran complement (0)"), "{text}");
}

#[test]
fn chain_cover_command() {
    let out = run(&["chain-cover", "2", "3", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("9 chains"));
    let out = run(&["chain-cover", "1", "3", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn upset_cofinite_command() {
    let out = run(&["upset-cofinite", "(2,1,1) (1,3,1) (1,1,4)"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("complement size 6"));
    let out = run(&["upset-cofinite", "(2,2,1) (1,1,3)"]);
    assert_eq!(code(&out), 1);
    let out = run(&["upset-cofinite", "(2,2,1"]);
    assert_eq!(code(&out), 2);
    let out = run(&["upset-cofinite", "--dim", "2", "(2,2,1) (1,1,3)"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn eggbox_writes_dot_and_json() {
    let dot_path = tmp("eggbox.dot");
    let out = run(&[
        "eggbox",
        "6",
        "--dot",
        dot_path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["generated"], 6);
    let dot = fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("digraph eggbox"));
    assert!(dot.contains("cluster_d0"));
}

#[test]
fn selftest_runs_and_respects_seed_env() {
    let out = bin()
        .args(["selftest", "--seeds", "3", "--json"])
        .env("POSETMAP_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["base_seed"], 17);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn serialization_roundtrip_for_thousand_elements() {
    for seed in 0..1000u64 {
        let a = oracle::generate(3, seed, 2).unwrap();
        let back = doc::parse_element(&doc::serialize_element(&a)).unwrap();
        assert_eq!(back, a, "seed {seed}");
    }
}
