use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use tempfile::TempDir;

fn gqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gqw"))
        .args(args)
        .output()
        .expect("gqw runs")
}

fn code(args: &[&str]) -> i32 {
    gqw(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(gqw(args).stdout).expect("utf-8")
}

struct Fixtures {
    _dir: TempDir,
    w2: PathBuf,
    w3: PathBuf,
    grid: PathBuf,
    broken: PathBuf,
    not_gq: PathBuf,
    anchors: PathBuf,
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn fixtures() -> Fixtures {
    let dir = tempfile::tempdir().unwrap();
    let w2 = write(dir.path(), "w2.txt", &stdout(&["build", "w", "--q", "2"]));
    let w3 = write(dir.path(), "w3.txt", &stdout(&["build", "w", "--q", "3"]));
    let grid = write(
        dir.path(),
        "grid.txt",
        &stdout(&["build", "grid", "--m", "3", "--n", "5"]),
    );
    let broken = write(dir.path(), "broken.txt", "points 3\nlines 1\n0 1 9\n");
    let not_gq = write(dir.path(), "tri.txt", "points 3\nlines 3\n0 1\n0 2\n1 2\n");
    let anchors = write(dir.path(), "alpha.txt", "anchors: 0->0, 1->3/2, 2->2\n");
    Fixtures {
        _dir: dir,
        w2,
        w3,
        grid,
        broken,
        not_gq,
        anchors,
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_matches_library_serialization() {
    let g = gqw_core::classical::build_symplectic(2).unwrap();
    assert_eq!(
        stdout(&["build", "w", "--q", "2"]),
        gqw_core::incidence::serialize_incidence(&g)
    );
}

#[test]
fn check_reports_order() {
    let f = fixtures();
    let out = stdout(&["check", s(&f.w2)]);
    assert!(out.contains("verdict: pass"));
    assert!(out.contains("order: (2,2)"));
    let json = stdout(&["check", s(&f.w3), "--emit", "json-lines"]);
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["kind"], "check");
    assert_eq!(v["order"], "(3,3)");
    assert_eq!(v["points"], 40);
    assert!(v["witness"].is_null());
}

#[test]
fn search_json_lines_have_stable_keys() {
    let f = fixtures();
    let out = stdout(&[
        "search",
        s(&f.w2),
        "--kind",
        "ovoid",
        "--mode",
        "all",
        "--emit",
        "json-lines",
    ]);
    let records: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 7);
    for r in &records[..6] {
        assert_eq!(r["kind"], "ovoid");
        assert_eq!(r["members"].as_array().unwrap().len(), 5);
        assert_eq!(r["count"], 5);
    }
    assert_eq!(records[6]["count"], 6);
    assert_eq!(records[6]["status"], "complete");
}

#[test]
fn order_alpha_examples() {
    let set = "pt(0) U pt(1) U pt(2)";
    let out = stdout(&["order", "alpha", "--set", set, "--move", "1"]);
    assert!(out.contains("anchors: 0->0, 1->3/2, 2->2"));
    assert!(out.contains("verification: pass"));
    let out = stdout(&["order", "image", "--set", set, "--auto", s(&fixtures().anchors)]);
    assert!(out.contains("image: pt(0) U pt(3/2) U pt(2)"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let f = fixtures();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["build", "w", "--q", "3"],
        vec!["check", s(&f.w3)],
        vec![
            "search",
            s(&f.w2),
            "--kind",
            "ovoid",
            "--mode",
            "all",
            "--emit",
            "json-lines",
        ],
        vec!["search", s(&f.w3), "--kind", "spread", "--mode", "all", "--limit", "3"],
        vec!["auto", s(&f.grid), "--stabilize-set", "p0,p1"],
        vec![
            "feasibility",
            "--n",
            "6",
            "--s",
            "2",
            "--t",
            "9",
            "--emit",
            "json-lines",
        ],
        vec!["order", "classes", "--set", "seq(0,1,inc,excl) U seq(1,2,dec,excl)"],
        vec!["order", "alpha", "--set", "seq(0,1,inc,excl)", "--grow-at", "5/8"],
    ];
    for args in invocations {
        let a = gqw(&args);
        let b = gqw(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
    }
}

#[test]
fn exit_code_examples() {
    let f = fixtures();
    assert_eq!(code(&["feasibility", "--n", "8", "--s", "2", "--t", "4"]), 0);
    assert_eq!(code(&["feasibility", "--n", "8", "--s", "4", "--t", "4"]), 1);
    assert_eq!(code(&["check", s(&f.not_gq)]), 1);
    assert_eq!(code(&["check", s(&f.broken)]), 2);
    assert_eq!(code(&["search", s(&f.w3), "--kind", "ovoid"]), 1);
    assert_eq!(code(&["search", s(&f.w3), "--kind", "spread"]), 0);
    assert_eq!(code(&["order", "case", "--set", "empty"]), 1);
    assert_eq!(code(&["order", "case", "--set", "iv(0,1,o,o"]), 2);
    assert_eq!(code(&["order", "alpha", "--set", "pt(0)"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

/// One row of the exit-code matrix: arguments and the expected status.
fn matrix(f: &Fixtures) -> Vec<(Vec<String>, i32)> {
    let v = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        (v(&["build", "w", "--q", "2"]), 0),
        (v(&["build", "w", "--q", "5"]), 2),
        (v(&["build", "grid", "--m", "1", "--n", "3"]), 2),
        (v(&["build", "grid", "--m", "2"]), 2),
        (v(&["check", s(&f.w2)]), 0),
        (v(&["check", s(&f.not_gq)]), 1),
        (v(&["check", s(&f.broken)]), 2),
        (v(&["check", "/nonexistent/file"]), 2),
        (v(&["perp", s(&f.w2), "--points", "0,5"]), 0),
        (v(&["perp", s(&f.w2), "--points", "0,99"]), 2),
        (v(&["perp", s(&f.w2), "--points", "a"]), 2),
        (v(&["search", s(&f.w2), "--kind", "ovoid", "--mode", "count"]), 0),
        (v(&["search", s(&f.w3), "--kind", "ovoid", "--mode", "count"]), 1),
        (v(&["search", s(&f.w2), "--kind", "hyperoval"]), 2),
        (v(&["auto", s(&f.grid)]), 0),
        (v(&["auto", s(&f.grid), "--map-tuple", "p0", "L0"]), 2),
        (v(&["auto", s(&f.grid), "--map-tuple", "p0", "p14"]), 0),
        (v(&["auto", s(&f.grid), "--indiscernible", "0,1", "--n", "1"]), 2),
        (
            v(&[
                "auto",
                s(&f.grid),
                "--indiscernible",
                "0,1",
                "--n",
                "1",
                "--allow-intersecting",
            ]),
            1,
        ),
        (v(&["feasibility", "--plane-order", "6"]), 1),
        (v(&["feasibility", "--plane-order", "5"]), 0),
        (v(&["feasibility", "--n", "4", "--s", "2", "--t", "5"]), 1),
        (v(&["feasibility", "--n", "4", "--s", "2"]), 2),
        (v(&["feasibility"]), 2),
        (v(&["order", "classes", "--set", "pt(1/2)"]), 0),
        (v(&["order", "case", "--set", "seq(0,1,inc,excl)"]), 0),
        (v(&["order", "case", "--set", "iv(-inf,+inf,o,o)"]), 1),
        (
            v(&["order", "alpha", "--set", "pt(0) U pt(1) U pt(2)", "--move", "1"]),
            0,
        ),
        (
            v(&["order", "alpha", "--set", "pt(0) U pt(1) U pt(2)", "--move", "2"]),
            1,
        ),
        (
            v(&["order", "alpha", "--set", "pt(0) U pt(1) U pt(2)", "--move", "x"]),
            2,
        ),
        (
            v(&["order", "alpha", "--set", "seq(0,1,inc,excl)", "--grow-at", "5/8"]),
            0,
        ),
        (
            v(&[
                "order",
                "alpha",
                "--set",
                "pt(-1) U pt(1) U iv(3,4,c,c)",
                "--boxes",
                "-1/2,0,1,3",
            ]),
            0,
        ),
        (
            v(&[
                "order",
                "alpha",
                "--set",
                "pt(-1) U pt(1) U iv(3,4,c,c)",
                "--boxes",
                "-1/2,0,1",
            ]),
            2,
        ),
        (
            v(&[
                "order",
                "alpha",
                "--set",
                "pt(-1) U pt(1) U iv(3,4,c,c)",
                "--boxes",
                "-1/2,0,1,4",
            ]),
            1,
        ),
        (v(&["order", "image", "--set", "pt(1)", "--auto", s(&f.anchors)]), 0),
        (v(&["order", "image", "--set", "pt(1)", "--auto", s(&f.broken)]), 2),
        (v(&["order", "nothing"]), 2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exit_code_matrix(row in 0usize..37, json in any::<bool>()) {
        let f = fixtures();
        let rows = matrix(&f);
        prop_assume!(row < rows.len());
        let (mut args, expected) = rows[row].clone();
        if json {
            args.push("--emit".into());
            args.push("json-lines".into());
        }
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        prop_assert_eq!(code(&refs), expected, "{:?}", args);
    }
}

#[test]
fn exit_code_matrix_exhaustive() {
    let f = fixtures();
    for (args, expected) in matrix(&f) {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(code(&refs), expected, "{args:?}");
    }
}
