//! End-to-end runs of the `hmap` binary.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Stdio};

const LOOP: &str = "hmap 1 2\nalpha: 1 0\nsigma: 1 0\nroot: dark 0\n";

/// A dark triangle glued to a light triangle: ingirth 3 from the dark side.
const TRIANGLE: &str = "hmap 1 6\nalpha: 3 4 5 0 1 2\nsigma: 5 3 4 1 2 0\nroot: dark 0\n";

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hmap(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hmap"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(stdin.as_bytes())
        .expect("stdin accepts input");
    let out = child.wait_with_output().expect("binary finishes");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 errors"),
    }
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = hmap(args, stdin);
    assert_eq!(out.code, 0, "{args:?} failed: {}", out.stderr);
    out.stdout
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hmap-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn without_charges(hmap: &str) -> String {
    hmap.lines()
        .filter(|l| !l.starts_with("charge"))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[test]
fn validate_accepts_the_loop() {
    let out = ok(&["validate"], LOOP);
    assert!(out.contains("valid planar hypermap"));
    assert!(out.contains("ingirth: 1"));
}

#[test]
fn malformed_input_exits_with_format_error() {
    let out = hmap(&["validate"], "hmap 1 two\n");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("format error"));
}

#[test]
fn invalid_hypermap_exits_with_domain_error_naming_the_invariant() {
    let out = hmap(
        &["validate"],
        "hmap 1 2\nalpha: 0 1\nsigma: 1 0\nroot: dark 0\n",
    );
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("fixed point"), "{}", out.stderr);
}

#[test]
fn phi_then_psi_reproduces_the_canonical_document() {
    for (input, d) in [(LOOP, "1"), (TRIANGLE, "3")] {
        let oriented = ok(&["orient", "--charge", &format!("builtin:d={d}")], input);
        let canonical = ok(&["validate", "--canonical"], &without_charges(&oriented));
        let mob = ok(&["biject", "--dir", "phi"], &canonical);
        assert!(mob.starts_with("mob 1\n"));
        let back = ok(&["biject", "--dir", "psi"], &mob);
        assert_eq!(back, canonical);
        // And from the other side: psi then phi returns the same text.
        assert_eq!(ok(&["biject", "--dir", "phi"], &back), mob);
    }
}

#[test]
fn orientation_for_the_wrong_ingirth_is_a_domain_error() {
    let out = hmap(&["orient", "--charge", "builtin:d=2"], TRIANGLE);
    assert_eq!(out.code, 1, "{}", out.stderr);
    let out = hmap(&["orient", "--charge", "builtin:nonsense"], TRIANGLE);
    assert_eq!(out.code, 2);
}

#[test]
fn inline_charges_give_the_same_orientation_as_the_builtin_one() {
    let builtin = ok(&["orient", "--charge", "builtin:d=3"], TRIANGLE);
    let charges: String = builtin
        .lines()
        .filter(|l| l.starts_with("charge"))
        .map(|l| format!("{l}\n"))
        .collect();
    let inline = ok(
        &["orient", "--charge", "inline"],
        &format!("{TRIANGLE}{charges}"),
    );
    assert_eq!(inline, builtin);

    let dir = scratch_dir("charges");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("triangle.charge");
    std::fs::write(&file, &charges).unwrap();
    let from_file = ok(&["orient", "--charge", file.to_str().unwrap()], TRIANGLE);
    assert_eq!(from_file, builtin);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_counts_prints_a_passing_comparison_table() {
    let out = ok(
        &["verify", "--suite", "counts", "--d", "1", "--edges", "5"],
        "",
    );
    assert!(out.contains("monomial\tseries\tmaps\tmobiles\tstatus"));
    assert!(out.trim_end().ends_with("PASS"));
    assert!(!out.contains("MISMATCH"));
}

#[test]
fn series_and_exhaustive_counts_print_the_same_table() {
    for args in [
        vec!["--d", "2", "--K", "3", "--nmax", "3"],
        vec![
            "--d",
            "1",
            "--K",
            "3",
            "--nmax",
            "3",
            "--annular",
            "2",
            "--outer",
            "dark:2",
            "--marked",
            "light:2",
        ],
        vec![
            "--d",
            "1",
            "--K",
            "3",
            "--nmax",
            "3",
            "--annular",
            "2",
            "--outer",
            "light:2",
            "--marked",
            "light:2",
        ],
    ] {
        let mut series_args = vec!["count"];
        series_args.extend(&args);
        let series = ok(&series_args, "");
        series_args.push("--oracle");
        let oracle = ok(&series_args, "");
        assert!(series.lines().count() > 2, "{series}");
        assert_eq!(series, oracle, "{args:?}");
    }
}

#[test]
fn count_prints_the_algebraic_system() {
    let out = ok(
        &[
            "count", "--d", "4", "--K", "4", "--system", "--light", "4", "--dark", "3",
        ],
        "",
    );
    assert!(out.starts_with("F = "));
    assert!(out.contains("L_0 = "));
    assert!(out.contains("W_4 = "));
}

#[test]
fn enumerate_counts_corner_rooted_hypermaps() {
    let out = ok(&["enumerate", "--edges", "3"], "");
    assert_eq!(out, "edges\tcount\n1\t2\n2\t6\n3\t24\n");
}

#[test]
fn enumerated_files_validate() {
    let dir = scratch_dir("enumerate");
    let out = ok(
        &[
            "enumerate",
            "--edges",
            "3",
            "--root",
            "dark",
            "--ingirth",
            "2",
            "--out",
            dir.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.starts_with("wrote"));
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert!(!files.is_empty());
    for f in files {
        let text = std::fs::read_to_string(f.unwrap().path()).unwrap();
        assert!(ok(&["validate"], &text).contains("ingirth: 2"));
        // Files are written in canonical form.
        assert_eq!(ok(&["validate", "--canonical"], &text), text);
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn export_dot_renders_hypermaps_and_mobiles() {
    let oriented = ok(&["orient", "--charge", "builtin:d=3"], TRIANGLE);
    let dot = ok(&["export-dot"], &oriented);
    assert!(dot.contains("graph"));
    let mob = ok(&["biject", "--dir", "phi"], &without_charges(&oriented));
    let dot = ok(&["export-dot"], &mob);
    assert!(dot.contains("graph"));
    let out = hmap(&["export-dot"], "mob 1\nQ\n");
    assert_eq!(out.code, 2);
}
