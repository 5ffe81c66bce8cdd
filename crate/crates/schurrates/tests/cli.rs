use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use schurrates::harness::{format_matrix, parse_entry, parse_matrix};
use schurrates::matcore::random_density;
use schurrates::{ComplexMatrix, C64};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schurrates"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn matrix_entries_parse() {
    assert_eq!(parse_entry("0.5").unwrap(), C64::new(0.5, 0.0));
    assert_eq!(parse_entry("0.5+0.25j").unwrap(), C64::new(0.5, 0.25));
    assert_eq!(parse_entry("1e-3-2E-2j").unwrap(), C64::new(1e-3, -2e-2));
    assert_eq!(parse_entry("-j").unwrap(), C64::new(0.0, -1.0));
    assert_eq!(parse_entry("2.5j").unwrap(), C64::new(0.0, 2.5));
    assert!(parse_entry("1+").is_err() && parse_entry("abc").is_err());
    let m = random_density::<f64>(3, 4, 3).unwrap().into_matrix();
    let back = parse_matrix(&format_matrix(&m)).unwrap();
    assert_eq!(back, m);
    assert!(parse_matrix("1 2\n3\n").is_err());
    assert!(parse_matrix("# only a comment\n").is_err());
    let with_comment = parse_matrix("1 0 # first\n\n0 1\n").unwrap();
    assert_eq!(with_comment, ComplexMatrix::identity(2));
}

#[test]
fn divergence_table() {
    let dir = tempfile::tempdir().unwrap();
    let rho = write(dir.path(), "rho.txt", "0.7 0\n0 0.3\n");
    let sigma = write(dir.path(), "sigma.txt", "0.7+0j 0.1+0j\n0.1-0j 0.3+0j\n");
    let out = run(&["divergence", "--state-a", rho.to_str().unwrap(), "--state-b", sigma.to_str().unwrap()]);
    let table = rows(&out);
    let phi = table.iter().find(|r| r[0] == "phi").unwrap();
    assert!((f(&phi[3]) - 0.0211).abs() < 5e-5);
    // 17 significant digits.
    assert_eq!(phi[3].split('e').next().unwrap().replace(['.', '-'], "").len(), 17);

    let out = run(&["divergence", "--state-a", rho.to_str().unwrap(), "--state-b", rho.to_str().unwrap()]);
    for r in rows(&out) {
        assert!(f(&r[3]).abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn divergence_rejects_bad_input() {
    assert_eq!(run(&["divergence", "--alpha", "0.5,1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "1 2\n3\n");
    assert_eq!(run(&["divergence", "--state-a", bad.to_str().unwrap()]).status.code(), Some(2));
    let not_state = write(dir.path(), "neg.txt", "1.5 0\n0 -0.5\n");
    let out = run(&["divergence", "--state-a", not_state.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["converge", "--quantity", "nope"]).status.code(), Some(2));
}

#[test]
fn converge_examples() {
    let dir = tempfile::tempdir().unwrap();
    let rho = write(dir.path(), "rho.txt", "0.7 0\n0 0.3\n");
    let table = rows(&run(&["converge", "--quantity", "phi", "--state-a", rho.to_str().unwrap(), "--state-b", rho.to_str().unwrap()]));
    assert!(f(&table[0][3]).abs() <= 0.02);

    let sigma = write(dir.path(), "sigma.txt", "0.35 0\n0 0.65\n");
    let table = rows(&run(&["converge", "--quantity", "lambda", "--seed", "5", "--state-b", sigma.to_str().unwrap()]));
    assert_eq!(table.last().unwrap()[0], "10");
    assert!(f(&table[0][5]).abs() <= 0.05);

    let table = rows(&run(&["converge", "--quantity", "theta", "--seed", "3", "--n-max", "8", "--q", "0.3,0.7", "--state-a", write(dir.path(), "s.txt", "0.85 0\n0 0.15\n").to_str().unwrap()]));
    assert!(f(&table[0][5]).abs() <= 0.1, "{table:?}");

    assert_eq!(run(&["converge", "--quantity", "theta2", "--q", "0.6,0.4"]).status.code(), Some(3));
    let p = write(dir.path(), "p.txt", "0.9 0\n0 0.1\n");
    let s = write(dir.path(), "s2.txt", "0.6 0\n0 0.4\n");
    let a = write(dir.path(), "a.txt", "1 0\n0 1\n");
    let out = run(&["converge", "--quantity", "delta", "--p", "0.9,0.1", "--state-a", s.to_str().unwrap(), "--state-b", p.to_str().unwrap(), "--matrix", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let status = bin().args(["verify", "--seed", "9", "--trials-scale", "0.05", "--out"]).arg(p).status().unwrap();
        assert_eq!(status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    for c in report["checks"].as_array().unwrap() {
        for key in ["check", "anchor", "status", "evidence"] {
            assert!(c.get(key).is_some());
        }
        assert_eq!(c["status"], "pass");
    }
}

#[test]
fn rt_scan_examples() {
    let dir = tempfile::tempdir().unwrap();
    let rho = write(dir.path(), "rho.txt", "0.7 0\n0 0.3\n");
    let sigma = write(dir.path(), "sigma.txt", "0.2 0\n0 0.8\n");
    let table = rows(&run(&["rt-scan", "--state-a", rho.to_str().unwrap(), "--state-b", sigma.to_str().unwrap()]));
    let d = 0.7 * (0.7f64 / 0.2).log2() + 0.3 * (0.3f64 / 0.8).log2();
    assert_eq!(table.len(), 21);
    for r in &table {
        assert!((f(&r[1]) - d).abs() < 1e-8);
    }

    let table = rows(&run(&["rt-scan", "--seed", "4"]));
    assert!(f(&table[0][2]).abs() <= 1e-6 && f(&table[20][2]).abs() <= 1e-6);
    assert!(table[5][2].is_empty());

    let jump = |steps: usize| {
        let t = rows(&run(&["rt-scan", "--seed", "4", "--steps", &steps.to_string()]));
        t.windows(2).map(|w| (f(&w[1][1]) - f(&w[0][1])).abs()).fold(0.0, f64::max)
    };
    let (coarse, fine) = (jump(50), jump(100));
    assert!(fine <= 0.55 * coarse, "{coarse} {fine}");

    let qutrit = write(dir.path(), "q.txt", "0.5 0 0\n0 0.3 0\n0 0 0.2\n");
    assert_eq!(run(&["rt-scan", "--state-a", qutrit.to_str().unwrap(), "--state-b", qutrit.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["rt-scan", "--d", "3"]).status.code(), Some(2));
}
