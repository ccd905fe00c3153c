use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn relcomplex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcomplex"))
        .args(args)
        .output()
        .expect("binary runs")
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

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const D2_EDGE: &str = r#"{"complex": {"facets": [[0,1,2]]}, "subcomplex": {"facets": [[0,1]]}}"#;

#[test]
fn gen_named_families() {
    let out = relcomplex(&["--json", "gen", "simplex", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["facets"], serde_json::json!([[0, 1, 2]]));

    let out = relcomplex(&["gen", "d_path", "1", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["facets"], serde_json::json!([[0, 1], [1, 2]]));
}

#[test]
fn gen_rejects_unrealizable_parameters() {
    let out = relcomplex(&["gen", "d_circuit", "2", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = relcomplex(&["gen", "model_join", "1", "5", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = relcomplex(&["gen", "d_path", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn random_generation_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    for (path, seed) in [(&a, "7"), (&b, "7"), (&c, "8")] {
        let out = relcomplex(&[
            "gen", "random", "--vertices", "6", "--density", "0.5", "--seed", seed, "-o",
            s(path),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let (a, b, c) = (
        std::fs::read(a).unwrap(),
        std::fs::read(b).unwrap(),
        std::fs::read(c).unwrap(),
    );
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn generated_pairs_load_back() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("pair.json");
    let out = relcomplex(&[
        "gen", "random", "--seed", "3", "--subcomplex", "0.4", "-o", s(&p),
    ]);
    assert!(out.status.success());
    let out = relcomplex(&["check", s(&p)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "d2.json", r#"{"facets": [[0,1,2]]}"#);
    let out = relcomplex(&["check", s(&good)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));

    let bad = write(
        &dir,
        "bad.json",
        r#"{"complex": {"facets": [[0,1]]}, "subcomplex": {"facets": [[2]]}}"#,
    );
    let out = relcomplex(&["check", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("subcomplex not contained"));

    let garbage = write(&dir, "garbage.json", "not json");
    assert_eq!(relcomplex(&["check", s(&garbage)]).status.code(), Some(1));
    let missing = dir.path().join("missing.json");
    assert_eq!(relcomplex(&["check", s(&missing)]).status.code(), Some(1));

    let out = relcomplex(&["check", s(&good), "--inject-fault"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn homology_of_projective_plane() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("rp2.json");
    assert!(relcomplex(&["gen", "projective_plane", "-o", s(&p)]).status.success());
    let out = relcomplex(&["homology", s(&p), "-k", "1"]);
    assert_eq!(stdout(&out), "H_1 = Z/2\n");
    let out = relcomplex(&["homology", s(&p), "--all"]);
    assert_eq!(stdout(&out), "H_0 = Z\nH_1 = Z/2\nH_2 = 0\n");
    let out = relcomplex(&["--json", "homology", s(&p), "-k", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["homology"][0]["torsion"], serde_json::json!(["2"]));
}

#[test]
fn matrix_tree_on_k4() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("k4.json");
    assert!(relcomplex(&["gen", "skeleton_simplex", "3", "1", "-o", s(&p)]).status.success());
    let out = relcomplex(&["trees", s(&p), "-k", "1", "--verify-i"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("LHS=64 RHS=64 VERIFIED"));

    let out = relcomplex(&["trees", s(&p), "-k", "1", "--count"]);
    assert_eq!(stdout(&out), "trees=16 weighted=16\n");

    let out = relcomplex(&["trees", s(&p), "-k", "1", "--verify-ii", "--paranoid"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("forests=4 VERIFIED\n"));

    let out = relcomplex(&["--budget", "3", "trees", s(&p), "-k", "1", "--enumerate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn comparison_bound_on_triangle_relative_to_edge() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "d2.json", D2_EDGE);
    let out = relcomplex(&["bounds", s(&p), "-k", "1", "--theorem", "4.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("bound=2 gap=2 holds equality"));

    let out = relcomplex(&["--json", "bounds", s(&p), "-k", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for r in v["bounds"].as_array().unwrap() {
        assert_eq!(r["holds"], true);
    }
}

#[test]
fn spectrum_output() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("k4.json");
    assert!(relcomplex(&["gen", "skeleton_simplex", "3", "1", "-o", s(&p)]).status.success());
    let out = relcomplex(&["spectrum", s(&p), "-k", "0", "--exact", "--dump-matrix"]);
    let text = stdout(&out);
    assert!(text.contains("eigenvalues: 0 4 4 4\n"));
    assert!(text.contains("rank: 3\n"));
    assert!(text.contains("pseudo-determinant: 64\n"));
    assert!(text.contains("charpoly (ascending): 0 -64 48 -12 1\n"));
    assert!(text.contains("4 4\n3 -1 -1 -1\n"));

    let out = relcomplex(&["spectrum", s(&p), "-k", "1", "--part", "du"]);
    assert!(stdout(&out).contains("pseudo-determinant: 64"));

    let out = relcomplex(&["spectrum", s(&p), "-k", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gap_and_quiet() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "d2.json", D2_EDGE);
    let out = relcomplex(&["gap", s(&p), "-k", "1"]);
    assert_eq!(stdout(&out), "gap=2\n");
    let out = relcomplex(&["--quiet", "gap", s(&p), "-k", "1"]);
    assert!(out.stdout.is_empty());
    assert!(out.status.success());
}

#[test]
fn identical_inputs_give_identical_output() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("x.json");
    assert!(relcomplex(&["gen", "random", "--seed", "11", "--subcomplex", "0.3", "-o", s(&p)])
        .status
        .success());
    for args in [
        vec!["--json", "spectrum", s(&p), "-k", "1"],
        vec!["bounds", s(&p), "-k", "1"],
        vec!["--json", "check", s(&p)],
    ] {
        let a = relcomplex(&args);
        let b = relcomplex(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}
