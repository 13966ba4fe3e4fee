use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use duoidal::graded::{GradedObject, UnitKind};
use duoidal::linalg::Matrix;
use duoidal::measuring::{classical_measuring, truncated_polynomial_algebra};
use duoidal::serial::{save, Document};
use duoidal::structures::{example_library, forget_actions, EXAMPLES};
use tempfile::TempDir;

fn duoidal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duoidal")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn graded(dir: &TempDir, name: &str, dims: Vec<usize>) -> PathBuf {
    write(dir, name, &save(&Document::GradedObject(GradedObject::new(dims))))
}

#[test]
fn cauchy_product_of_small_objects() {
    let dir = TempDir::new().unwrap();
    let v = graded(&dir, "v.json", vec![1, 1, 0]);
    let w = graded(&dir, "w.json", vec![0, 2, 0]);
    let o = duoidal(&["product", "--kind", "cauchy", arg(&v), arg(&w)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dims: 0 2 2\n"));
    let o = duoidal(&["--format", "json", "product", "--kind", "hadamard", arg(&v), arg(&w)]);
    assert!(stdout(&o).contains("\"kind\": \"graded-object\""));
}

#[test]
fn selftest_is_deterministic() {
    let a = duoidal(&["selftest", "--seed", "42"]);
    let b = duoidal(&["selftest", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("10/10 criteria passed\n"));
}

#[test]
fn check_structure_reports_instances() {
    let dir = TempDir::new().unwrap();
    let ass = example_library("ass", 3).unwrap();
    let good = write(&dir, "ass3.json", &save(&Document::Structure(ass.clone())));
    let o = duoidal(&["check-structure", arg(&good)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("pass  associativity"));
    assert!(text.contains("pass  equivariance-outer"));
    assert!(text.contains("PASS:"));

    let poly = save(&Document::Structure(example_library("poly", 3).unwrap()));
    let v: serde_json::Value = serde_json::from_str(&poly).unwrap();
    let mut v = v;
    v["payload"]["components"]["1,2"]["entries"][0] = "2".into();
    let bad = write(&dir, "bad.json", &v.to_string());
    let o = duoidal(&["check-structure", arg(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  associativity [1,1,1]"));
    let o = duoidal(&["--format", "json", "check-structure", arg(&bad)]);
    assert!(stdout(&o).contains("\"passed\": false"));
}

#[test]
fn round_trip_is_canonical() {
    let dir = TempDir::new().unwrap();
    let mut docs: Vec<Document> = EXAMPLES.iter().map(|n| Document::Structure(example_library(n, 2).unwrap())).collect();
    docs.push(Document::GradedObject(GradedObject::unit(UnitKind::Cauchy, 3)));
    for (k, doc) in docs.iter().enumerate() {
        let text = save(doc);
        let p = write(&dir, &format!("d{k}.json"), &text);
        let o = duoidal(&["canonicalize", arg(&p)]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), text);
    }
    let messy = write(&dir, "messy.json", r#"{"payload":{"dims":[1,0],"truncation":1},"schema":1,"kind":"graded-object"}"#);
    let once = stdout(&duoidal(&["canonicalize", arg(&messy)]));
    let again = write(&dir, "again.json", &once);
    assert_eq!(stdout(&duoidal(&["canonicalize", arg(&again)])), once);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let ass = save(&Document::Structure(example_library("ass", 2).unwrap()));
    let zero_den = write(&dir, "z.json", &ass.replacen("\"1\"", "\"2/0\"", 1));
    assert_eq!(duoidal(&["check-structure", arg(&zero_den)]).status.code(), Some(2));
    let extra = write(&dir, "x.json", &ass.replacen("\"schema\": 1", "\"schema\": 1, \"extra\": true", 1));
    assert_eq!(duoidal(&["check-structure", arg(&extra)]).status.code(), Some(2));
    assert_eq!(duoidal(&["check-structure", "/nonexistent.json"]).status.code(), Some(2));
    let v = graded(&dir, "v.json", vec![1, 1]);
    assert_eq!(duoidal(&["check-structure", arg(&v)]).status.code(), Some(2));
    assert_eq!(duoidal(&["check-duoidal", "--pair", "nope"]).status.code(), Some(2));
    let m = write(&dir, "m.json", &ass);
    assert_eq!(duoidal(&["convolve", "--pair", "hadamard-over-cauchy", "--q", "2", arg(&m), arg(&m)]).status.code(), Some(2));
    assert_eq!(duoidal(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn measurings_and_convolution() {
    let dir = TempDir::new().unwrap();
    let a = truncated_polynomial_algebra(3);
    let inv = Matrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
    let mut m = classical_measuring(&[Matrix::identity(3), inv], &a, &a);
    let good = write(&dir, "m.json", &save(&Document::Measuring(m.clone())));
    let o = duoidal(&["check-measuring", "--pair", "cauchy-over-hadamard", arg(&good)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    m.phi[0].set(1, 1, duoidal::linalg::q(5));
    let bad = write(&dir, "bad.json", &save(&Document::Measuring(m)));
    let o = duoidal(&["check-measuring", "--pair", "cauchy-over-hadamard", arg(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  multiplicativity"));

    let z = write(&dir, "z.json", &save(&Document::Structure(forget_actions(&example_library("com-dual", 3).unwrap()))));
    let v = write(&dir, "v.json", &save(&Document::Structure(forget_actions(&example_library("ass", 3).unwrap()))));
    let o = duoidal(&["convolve", "--pair", "hadamard-over-sub-positive", arg(&z), arg(&v)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS: convolution structure on 0 1 2 6"));

    let z = write(&dir, "dp.json", &save(&Document::Structure(example_library("divided-power", 2).unwrap())));
    let v = write(&dir, "ext.json", &save(&Document::Structure(example_library("exterior", 2).unwrap())));
    let o = duoidal(&["convolve", "--pair", "cauchy", "--q", "-1", arg(&z), arg(&v)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn duals_and_generating_functions() {
    let dir = TempDir::new().unwrap();
    let com = write(&dir, "com.json", &save(&Document::Structure(example_library("com", 3).unwrap())));
    let o = duoidal(&["dual", arg(&com)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"kind\": \"cooperad\""));
    assert_eq!(stdout(&duoidal(&["hilbert", arg(&com)])), "0 1 1 1\n");
    assert_eq!(stdout(&duoidal(&["egf", arg(&com)])), "0 1 1/2 1/6\n");
    let end = write(&dir, "end.json", &save(&Document::Structure(example_library("end", 2).unwrap())));
    assert_eq!(duoidal(&["dual", arg(&end)]).status.code(), Some(2));
}

#[test]
fn factor_check_identity() {
    let dir = TempDir::new().unwrap();
    let a = truncated_polynomial_algebra(3);
    let inv = Matrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
    let m = classical_measuring(&[Matrix::identity(3), inv], &a, &a);
    let id = duoidal::graded::GradedMap::identity(m.comonoid.carrier());
    let f = duoidal::serial::FactorizationCandidate {
        universal: m.comonoid.clone(),
        phi_univ: m.phi.clone(),
        psi: m.clone(),
        g: id.clone(),
        other: Some(id),
    };
    let p = write(&dir, "f.json", &save(&Document::Factorization(Box::new(f.clone()))));
    let o = duoidal(&["factor-check", "--pair", "cauchy-over-hadamard", arg(&p)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let mut broken = f;
    broken.g.components[0] = Matrix::from_i64(&[&[2, 0], &[0, 1]]);
    broken.other = None;
    let p = write(&dir, "g.json", &save(&Document::Factorization(Box::new(broken))));
    let o = duoidal(&["factor-check", "--pair", "cauchy-over-hadamard", arg(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("comonoid map: false"), "{}", stdout(&o));
}

#[test]
fn check_duoidal_from_seed_and_file() {
    let dir = TempDir::new().unwrap();
    let a = duoidal(&["check-duoidal", "--pair", "hadamard-over-cauchy", "--seed", "3", "--count", "2"]);
    let b = duoidal(&["check-duoidal", "--pair", "hadamard-over-cauchy", "--seed", "3", "--count", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut g = duoidal::random::Gen::new(9);
    let pair = duoidal::duoidal::DuoidalPair::HadamardOverSubPositive;
    let s = write(&dir, "s.json", &save(&Document::Samples(g.duoidal_samples(pair, 3, 2))));
    assert_eq!(duoidal(&["check-duoidal", "--pair", pair.tag(), arg(&s)]).status.code(), Some(0));
    let s = write(&dir, "t.json", &save(&Document::Samples(g.duoidal_samples(duoidal::duoidal::DuoidalPair::CauchyOverHadamard, 3, 2))));
    assert_eq!(duoidal(&["check-duoidal", "--pair", pair.tag(), arg(&s)]).status.code(), Some(2));
    let o = duoidal(&["check-duoidal", "--pair", "cauchy-over-hadamard", "--species", "--count", "1"]);
    assert_eq!(o.status.code(), Some(0));
}
