use std::path::{Path, PathBuf};

use crossflip::cli::{main_with_args, EXIT_FAIL, EXIT_PASS, EXIT_UNDECIDED, EXIT_USAGE};
use crossflip::complex::{is_proper_coloring, Complex};
use crossflip::io::complex_from_json;
use crossflip::iso::are_isomorphic;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("crossflip").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn load(p: &Path) -> Complex {
    complex_from_json(&std::fs::read_to_string(p).unwrap()).unwrap().0
}

#[test]
fn gen_cross_polytope_is_colored() {
    let (code, out, _) = run(&["gen", "cross-polytope", "--dim", "2"]);
    assert_eq!(code, EXIT_PASS);
    let (c, k) = complex_from_json(&out).unwrap();
    assert_eq!(c.num_facets(), 8);
    let k = k.expect("coloring present");
    assert!(is_proper_coloring(&c, &k, 3));
    assert_eq!(k.get("v1".parse().unwrap()), Some(1));
    assert_eq!(k.get("1".parse().unwrap()), Some(1));
}

#[test]
fn gen_diamond_and_stacked() {
    let (code, out, _) = run(&["gen", "diamond", "--dim", "2", "--index", "0,1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(complex_from_json(&out).unwrap().0.num_facets(), 6);
    let (code, out, _) = run(&["gen", "stacked", "--copies", "2", "--dim", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(complex_from_json(&out).unwrap().0.num_facets(), 14);
}

#[test]
fn checks_report_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("o.json");
    let o_str = o.to_str().unwrap();
    assert_eq!(run(&["gen", "cross-polytope", "--dim", "2", "--out", o_str]).0, EXIT_PASS);
    assert_eq!(run(&["check", "manifold", o_str]).0, EXIT_PASS);
    assert_eq!(run(&["check", "balanced", o_str]).0, EXIT_PASS);

    let tri = write(dir.path(), "tri.json", r#"{"facets":[["0","1","2"]]}"#);
    assert_eq!(run(&["check", "induced", o_str, tri.to_str().unwrap()]).0, EXIT_PASS);
    let edges = write(dir.path(), "e.json", r#"{"facets":[["0","1"],["1","2"]]}"#);
    assert_eq!(run(&["check", "induced", o_str, edges.to_str().unwrap()]).0, EXIT_FAIL);

    let pinch = write(dir.path(), "p.json", r#"{"facets":[["0","1","2"],["0","3","4"]]}"#);
    assert_eq!(run(&["check", "manifold", pinch.to_str().unwrap()]).0, EXIT_FAIL);

    let big = write(dir.path(), "b.json", r#"{"facets":[["0","1","2","3","4"]]}"#);
    let (code, out, _) = run(&["check", "manifold", big.to_str().unwrap()]);
    assert_eq!(code, EXIT_UNDECIDED, "{out}");
}

#[test]
fn non_shelling_fixture_fails_at_sixth_facet() {
    let (code, out, _) = run(&[
        "check",
        "shelling-order",
        &fixture("non_shelling_ambient.json"),
        &fixture("non_shelling_order.json"),
    ]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("fails at facet 6"), "{out}");
}

#[test]
fn shellable_respects_budget() {
    let dir = tempfile::tempdir().unwrap();
    let st = dir.path().join("st.json");
    run(&["gen", "stacked", "--copies", "2", "--out", st.to_str().unwrap()]);
    let (code, out, _) = run(&["check", "shellable", st.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    // the printed certificate is accepted back by shelling-order
    let cert = write(dir.path(), "cert.json", out.trim().strip_prefix("pass: order ").unwrap());
    assert_eq!(run(&["check", "shelling-order", st.to_str().unwrap(), cert.to_str().unwrap()]).0, EXIT_PASS);
    let (code, _, _) = run(&["check", "shellable", st.to_str().unwrap(), "--budget", "10"]);
    assert_eq!(code, EXIT_UNDECIDED);
    let pinch = write(dir.path(), "p.json", r#"{"facets":[["0","1","2"],["0","3","4"]]}"#);
    assert_eq!(run(&["check", "shellable", pinch.to_str().unwrap()]).0, EXIT_FAIL);
}

#[test]
fn trivial_flip_script_keeps_type() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("o.json");
    let f = dir.path().join("f.json");
    run(&["gen", "cross-polytope", "--dim", "2", "--out", o.to_str().unwrap()]);
    let script = write(dir.path(), "s.txt", "# trivial move\ncrossflip I=0 anchor=v0,1,2\n");
    let (code, _, err) = run(&[
        "flip",
        o.to_str().unwrap(),
        "--script",
        script.to_str().unwrap(),
        "--out",
        f.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS, "{err}");
    let (before, after) = (load(&o), load(&f));
    assert_ne!(before, after);
    assert!(are_isomorphic(&before, &after, None).is_some());
}

#[test]
fn bad_script_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("o.json");
    run(&["gen", "cross-polytope", "--dim", "2", "--out", o.to_str().unwrap()]);
    let script = write(dir.path(), "s.txt", "explode A=0\n");
    let (code, _, err) = run(&["flip", o.to_str().unwrap(), "--script", script.to_str().unwrap()]);
    assert_ne!(code, EXIT_PASS);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn walk_is_reproducible() {
    let a = run(&["walk", "--steps", "15", "--seed", "3"]);
    let b = run(&["walk", "--steps", "15", "--seed", "3"]);
    assert_eq!(a.0, EXIT_PASS);
    assert_eq!(a.1, b.1);
    let lines: Vec<&str> = a.1.lines().collect();
    assert_eq!(lines[0], "step,flip_index,facets,vertices,euler,balanced");
    assert_eq!(lines[1], "0,-,8,6,2,true");
    assert_eq!(lines.len(), 17);
    assert!(lines[1..].iter().all(|l| l.ends_with(",2,true")));
}

#[test]
fn catalog_and_verify() {
    let (code, out, _) = run(&["catalog", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.lines().count(), 1 + 7);
    let dir = tempfile::tempdir().unwrap();
    let j = dir.path().join("catalog.json");
    assert_eq!(run(&["catalog", "2", "--out", j.to_str().unwrap()]).0, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&j).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);

    let (code, out, _) = run(&["verify", "count", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("PASS") && out.contains("15"), "{out}");
    let (code, out, _) = run(&["verify", "reducibility", "2"]);
    assert_eq!(code, EXIT_PASS);
    for i in ["{0}@", "{1}@", "{0,1}@"] {
        assert!(out.contains(i), "{out}");
    }
    assert_eq!(run(&["catalog", "9"]).0, EXIT_UNDECIDED);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["gen", "diamond", "--dim", "2", "--index", "0,x"]).0, EXIT_USAGE);
    assert_eq!(run(&["check", "manifold", "/nonexistent/file.json"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "nothing"]).0, EXIT_USAGE);
}
