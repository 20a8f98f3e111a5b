use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn eacq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eacq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn catalog_lists_every_code() {
    let o = eacq(&["catalog"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for name in eacq::catalog::names() {
        assert!(out.contains(name), "{name} missing from\n{out}");
    }
    assert!(out.contains("[[63,21:12,7;6]]"));
}

#[test]
fn info_prints_generator_strings() {
    let o = eacq(&["info", "catalog:eacq-9-1-3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for g in [
        "ZZIZZIZZI",
        "IIIIZZIZZ",
        "ZIZZZIIII",
        "YYXXYYIII",
        "ZIZYXYYXY",
    ] {
        assert!(out.contains(g), "{g} missing from\n{out}");
    }
    assert!(out.contains("S_C"));
}

#[test]
fn distance_reports_exhaustive_result() {
    let o = eacq(&["distance", "catalog:shor-9-1-3", "--max-weight", "3"]);
    assert!(o.status.success());
    assert!(
        stdout(&o).starts_with("d = 3 (exhaustive)"),
        "{}",
        stdout(&o)
    );

    let o = eacq(&[
        "distance",
        "catalog:shor-9-1-3",
        "--max-weight",
        "2",
        "--threads",
        "2",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "d >= 3 (exhaustive up to weight 2)");

    // Y errors on qubits 6 and 9 form an undetected nontrivial operator.
    let o = eacq(&["distance", "catalog:eacq-9-1-3", "--max-weight", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "d = 2 (exhaustive)\nwitness IIIIIYIIY\n");
}

#[test]
fn table_then_simulate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("shor.table");
    let o = eacq(&["table", "catalog:shor-9-1-3", "-t", "1", "-o", path(&table)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(fs::read_to_string(&table)
        .unwrap()
        .starts_with("eacq-table v1\n"));

    let args = [
        "simulate",
        "catalog:shor-9-1-3",
        "--table",
        path(&table),
        "--p",
        "0.01",
        "--p",
        "0.05",
        "--trials",
        "2000",
        "--seed",
        "11",
    ];
    let a = eacq(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "2"]);
    let b = eacq(&threaded);
    assert_eq!(a.stdout, b.stdout);
    let csv = stdout(&a);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "p,trials,classical_failures,quantum_failures,seed,rng_id"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0.01,2000,"));
    assert!(lines[2].contains(",11,chacha8"));
}

#[test]
fn simulate_rejects_foreign_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t");
    assert!(
        eacq(&["table", "catalog:shor-9-1-3", "-t", "1", "-o", path(&table)])
            .status
            .success()
    );
    let o = eacq(&[
        "simulate",
        "catalog:eaqecc-8-1-3-1",
        "--table",
        path(&table),
        "--p",
        "0.1",
        "--trials",
        "10",
        "--seed",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn uncorrectable_table_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t");
    let o = eacq(&["table", "catalog:shor-9-1-3", "-t", "2", "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("uncorrectable error pair"));
    assert!(!out.exists());
}

#[test]
fn transform_output_is_reingestible() {
    let dir = tempfile::tempdir().unwrap();
    let stripped = dir.path().join("stripped.eacq");
    let o = eacq(&["transform", "catalog:eacq-8-1-3-1", "--strip"]);
    assert!(o.status.success());
    fs::write(&stripped, &o.stdout).unwrap();
    let v = eacq(&["validate", path(&stripped)]);
    assert!(v.status.success(), "{}", stderr(&v));
    assert!(stdout(&v).starts_with("[[8,1:0,?;1]]"));
    assert!(!stdout(&v).contains("FAILED"));

    let base = dir.path().join("base.eacq");
    fs::write(&base, &o.stdout).unwrap();
    let e = eacq(&["transform", path(&base), "--enhance", "1", "1"]);
    assert!(e.status.success(), "{}", stderr(&e));
    fs::write(&base, &e.stdout).unwrap();
    assert!(stdout(&eacq(&["validate", path(&base)])).starts_with("[[8,1:3,?;1]]"));

    let bad = eacq(&["transform", path(&stripped), "--enhance", "9", "0"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn validate_names_anticommuting_rows() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.eacq");
    // Declares a moved symplectic pair but drops two isotropic rows instead.
    fs::write(
        &file,
        "eacq v1\n\
         n 8  c1 0  c2 1\n\
         hq 11000000|00000000\n\
         hq 10100000|00000000\n\
         hq 00011000|00000000\n\
         hq 00010100|00000000\n\
         hq 00000011|00000000\n\
         hq 00000000|11111100\n\
         hq 00000001|00000000\n\
         hq 00000000|11100011\n\
         hc 10000000\n\
         hc 01000000\n\
         hc 00100000\n\
         hc 00010000\n\
         hc 00000010\n\
         hc 00000001\n",
    )
    .unwrap();
    let o = eacq(&["validate", path(&file)]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("rows 5 and 6 anticommute"), "{err}");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.eacq");
    fs::write(&file, "eacq v1\nn 2  c1 0  c2 0\nhq 1x|00\n").unwrap();
    let o = eacq(&["validate", path(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        eacq(&["distance", "catalog:shor-9-1-3"]).status.code(),
        Some(2)
    );
    assert_eq!(eacq(&["catalog", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        eacq(&[
            "transform",
            "catalog:shor-9-1-3",
            "--strip",
            "--enhance",
            "1",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(eacq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(eacq(&["--help"]).status.code(), Some(0));
}

#[test]
fn unknown_catalog_name_is_a_domain_error() {
    let o = eacq(&["info", "catalog:nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("eacq-9-1-3"));
}
