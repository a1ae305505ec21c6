//! End-to-end acceptance for the CLI: exit codes, output formats, and
//! byte-stable golden files, all through the real binary.
//!
//! Exit code contract: 0 positive verdict, 1 negative verdict, 2 error
//! (and no verdict is ever printed on the error path).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigidrel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn criterion_8_check_exit_codes_and_verdicts() {
    let lin = golden("linorder3.rel");
    let lin = lin.to_str().unwrap();

    let out = run(&["check", lin, "--mode", "rigid"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "RIGID\n");

    let empty2 = golden("empty2.rel");
    let out = run(&["check", empty2.to_str().unwrap(), "--mode", "rigid"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "NOT RIGID\nwitness: (0 1)\n");

    let cycle = golden("cycle3.rel");
    let out = run(&["check", cycle.to_str().unwrap(), "--mode", "rigid"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "NOT RIGID\nwitness: (0 1 2)\n");

    let out = run(&["check", lin, "--mode", "strong"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "STRONGLY RIGID\n");

    let loopy = golden("loopy2.rel");
    let out = run(&["check", loopy.to_str().unwrap(), "--mode", "strong"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "NOT STRONGLY RIGID\nwitness: [0 0]\n");

    let path3 = golden("path3.rel");
    let out = run(&["check", path3.to_str().unwrap(), "--mode", "hereditary"]);
    assert_eq!(code(&out), 1);
    assert_eq!(
        stdout(&out),
        "NOT HEREDITARILY RIGID\nwitness subset: {0 2}\nwitness: (0 1)\n"
    );

    let out = run(&["check", lin, "--mode", "hereditary"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "HEREDITARILY RIGID\n");

    let out = run(&["check", lin, "--mode", "irreflexive"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "IRREFLEXIVE\n");

    let loop1 = golden("loop1.rel");
    let out = run(&["check", loop1.to_str().unwrap(), "--mode", "irreflexive"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "NOT IRREFLEXIVE\nwitness: loop at 0\n");
}

#[test]
fn criterion_8_errors_exit_2_without_verdicts() {
    let dir = tempfile::tempdir().unwrap();

    // malformed file
    let bad = dir.path().join("bad.rel");
    fs::write(&bad, "n 2\ne 0 1\ne 0 1\n").unwrap();
    let out = run(&["check", bad.to_str().unwrap(), "--mode", "rigid"]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout(&out), "", "no verdict may appear on exit 2");
    assert!(stderr(&out).contains("duplicate edge"));

    // missing file
    let out = run(&["check", "/nonexistent.rel", "--mode", "rigid"]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout(&out), "");

    // bound exceeded, then lifted with --max-n
    let big = dir.path().join("big.rel");
    let out = run(&[
        "build",
        "linorder",
        "--count",
        "11",
        "--out",
        big.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&["check", big.to_str().unwrap(), "--mode", "rigid"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("exceeds the bound"));
    let out = run(&[
        "check",
        big.to_str().unwrap(),
        "--mode",
        "rigid",
        "--max-n",
        "11",
    ]);
    assert_eq!(code(&out), 0);

    // construction hypothesis violations are named
    let loopy = golden("loopy2.rel");
    let out = run(&[
        "build",
        "product-main",
        "--pairs",
        "0:0,1:1",
        "--base",
        loopy.to_str().unwrap(),
        "--zstar",
        "0",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not irreflexive"));

    // usage errors from the argument parser are also exit 2
    let out = run(&["check", "--mode", "rigid"]);
    assert_eq!(code(&out), 2);

    // unknown census bound
    let out = run(&["census", "--max-n", "9"]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout(&out), "");
}

#[test]
fn criterion_8_build_reproduces_golden_bytes() {
    // serialize path: builds are byte-identical to the canonical files
    let out = run(&["build", "linorder", "--count", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        out.stdout,
        fs::read(golden("linorder3.rel")).unwrap(),
        "linorder build must match the golden file"
    );

    let out = run(&[
        "build",
        "cantor",
        "--points",
        "00,01,10,11",
        "--zstar",
        "0",
        "--chain",
        "1,2",
        "--verify",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, fs::read(golden("cantor4.rel")).unwrap());
    assert!(stderr(&out).contains("verified: RIGID"));

    // a 5-element order has C(5,2) = 10 edges
    let out = run(&["build", "linorder", "--count", "5"]);
    let edge_lines = stdout(&out).lines().filter(|l| l.starts_with('e')).count();
    assert_eq!(edge_lines, 10);

    let out = run(&["build", "ordinal", "--gamma", "2"]);
    assert_eq!(stdout(&out), "n 2\ne 0 1\n");

    // product builds drive the same pipeline through a base file
    let base = golden("base2.rel");
    let out = run(&[
        "build",
        "product-lex",
        "--pairs",
        "0:0,0:1,1:0,1:1",
        "--base",
        base.to_str().unwrap(),
        "--verify",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("n 4"));
    assert_eq!(text.lines().filter(|l| l.starts_with('e')).count(), 6);

    let out = run(&[
        "build",
        "product-main",
        "--pairs",
        "00:0,10:1,01:0,11:1",
        "--base",
        base.to_str().unwrap(),
        "--zstar",
        "0",
        "--chain",
        "1,3",
        "--verify",
    ]);
    assert_eq!(code(&out), 0);

    // --out writes the same bytes to a file
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.rel");
    let out = run(&[
        "build",
        "linorder",
        "--count",
        "3",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        fs::read(&target).unwrap(),
        fs::read(golden("linorder3.rel")).unwrap()
    );

    // DOT export
    let out = run(&["build", "linorder", "--count", "2", "--dot"]);
    assert_eq!(
        stdout(&out),
        "digraph relation {\n    0;\n    1;\n    0 -> 1;\n}\n"
    );
}

#[test]
fn criterion_8_fraenkel_and_census_reports() {
    let out = run(&["fraenkel", "--atoms", "4", "--max-support", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("E={0}: 5 orbits, 32 relations checked"));
    assert!(text.contains("ALL NON-RIGID"));

    let out = run(&["fraenkel", "--atoms", "1", "--max-support", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("not applicable"));

    let out = run(&["fraenkel", "--atoms", "20", "--max-support", "1"]);
    assert_eq!(code(&out), 2);

    // census golden table, byte for byte
    let out = run(&["census", "--max-n", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, fs::read(golden("census4.tsv")).unwrap());
    assert!(stdout(&out).contains("2\t16\t12\t2\t12\t2"));

    let out = run(&["census", "--max-n", "0"]);
    assert_eq!(
        stdout(&out),
        "n\ttotal\trigid\tstrongly_rigid\thereditarily_rigid\tirreflexive_hereditarily_rigid\n0\t1\t1\t1\t1\t1\n"
    );

    // output is identical for any worker count
    let one = run(&["census", "--max-n", "3", "--threads", "1"]);
    let two = run(&["census", "--max-n", "3", "--threads", "2"]);
    assert_eq!(one.stdout, two.stdout);
    let one = run(&[
        "fraenkel", "--atoms", "5", "--max-support", "2", "--threads", "1",
    ]);
    let two = run(&[
        "fraenkel", "--atoms", "5", "--max-support", "2", "--threads", "2",
    ]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn criterion_8_output_is_deterministic() {
    let empty2 = golden("empty2.rel");
    let first = run(&["check", empty2.to_str().unwrap(), "--mode", "rigid"]);
    let second = run(&["check", empty2.to_str().unwrap(), "--mode", "rigid"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(code(&first), code(&second));
}
