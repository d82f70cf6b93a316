use std::fs;
use std::path::Path;

use bider_cli::report::{BiderReport, BracketReport};
use bider_cli::{run, Outcome, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use bider_core::bilinear::{heisenberg_b1, heisenberg_b2};
use bider_core::io::{parse_map, serialize_tensor, MapDocument};

const HEIS: &str =
    "# Heisenberg algebra\nalgebra heisenberg3\ndim 3\nkind lie\nc 1 2 3 = 1\nc 2 1 3 = -1\n";

fn bider(args: &[&str]) -> Outcome {
    run(std::iter::once("bider").chain(args.iter().copied()))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn der_reports_dimension() {
    let o = bider(&["der", "builtin:abelian(3)"]);
    assert_eq!(o.code, EXIT_PASS);
    assert!(o.stdout.contains("dim Der = 9"), "{}", o.stdout);
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.alg", HEIS);
    assert!(bider(&["der", &h]).stdout.contains("dim Der = 6"));
}

#[test]
fn bider_sides() {
    for (side, dim) in [("right", 18), ("left", 18)] {
        let o = bider(&["--json", "bider", "builtin:heisenberg3", "--side", side]);
        let r: BiderReport = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(r.dim, dim, "{side}");
        assert_eq!(r.basis.len(), dim);
    }
    let o = bider(&["bider", "builtin:abelian(2)"]);
    assert!(o.stdout.contains("side both\ndim = 8\n"), "{}", o.stdout);
}

#[test]
fn bracket_command_reproduces_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.alg", HEIS);
    let b1 = write(dir.path(), "b1.map", &serialize_tensor(&heisenberg_b1()));
    let b2 = write(dir.path(), "b2.map", &serialize_tensor(&heisenberg_b2()));
    let o = bider(&["bracket", "--op", "rhd", &b1, &b2, "--algebra", &h]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stderr);
    assert!(o
        .stdout
        .starts_with("# rhd on heisenberg3; inputs are right biderivations: yes\n"));
    let MapDocument::PolyRight(p) = parse_map(&o.stdout).unwrap() else {
        panic!("expected a polyright map")
    };
    assert_eq!(p.max_degree(), Some(2));
    let table = p.basis_table();
    assert_eq!(table.nonzero_entries().count(), 1);

    let o = bider(&[
        "--json",
        "bracket",
        "--op",
        "lhd",
        &b1,
        &b1,
        "--algebra",
        &h,
    ]);
    let r: BracketReport = serde_json::from_str(&o.stdout).unwrap();
    assert!(r.inputs_are_biderivations);
    assert_eq!(r.map, "map polyleft\ndim 3\n");
}

#[test]
fn malformed_input_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.alg",
        "algebra a\ndim 2\nkind lie\nc 1 2 1 = 1\nc 1 2 1 = 1\n",
    );
    let o = bider(&["check", &bad]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(
        o.stderr.contains("line 5: duplicate entry c 1 2 1"),
        "{}",
        o.stderr
    );

    let o = bider(&["check", &dir.path().join("missing.alg").to_string_lossy()]);
    assert_eq!(o.code, EXIT_USAGE);

    let o = bider(&["frobnicate"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("Usage"), "{}", o.stderr);

    let o = bider(&["bider", "builtin:sl2", "--side", "up"]);
    assert_eq!(o.code, EXIT_USAGE);

    let m = write(dir.path(), "m.map", "map polyright\ndim 3\n");
    let o = bider(&[
        "bracket",
        "--op",
        "lhd",
        &m,
        &m,
        "--algebra",
        "builtin:heisenberg3",
    ]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("lhd needs"), "{}", o.stderr);
}

#[test]
fn failing_checks_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(
        dir.path(),
        "broken.alg",
        "algebra broken\ndim 2\nkind lie\nc 1 2 1 = 1\n",
    );
    let o = bider(&["check", &broken]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stdout.contains("antisymmetry"), "{}", o.stdout);
    let o = bider(&["verify", &broken, "--samples", "2"]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stdout.contains("FAIL  kind/lie"), "{}", o.stdout);
}

#[test]
fn verify_is_deterministic_and_seeded() {
    let a = bider(&["verify", "builtin:L2", "--seed", "7", "--samples", "4"]);
    let b = bider(&["verify", "builtin:L2", "--seed", "7", "--samples", "4"]);
    assert_eq!(a, b);
    assert_eq!(a.code, EXIT_PASS);
    assert!(a.stdout.contains("seed 7, samples 4"));
    let generic = "algebra L4g\ndim 2\nkind generic\nc 2 1 1 = 1\nc 2 2 1 = 1\n";
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.alg", generic);
    let o = bider(&["verify", &g]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stdout);
    assert!(o.stdout.contains("PASS  bracket-right/jacobi"));
}

#[test]
fn help_exits_0() {
    let o = bider(&["--help"]);
    assert_eq!(o.code, EXIT_PASS);
    assert!(o.stdout.contains("example"));
}
