use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn spec(name: &str) -> String {
    format!("{}/specs/{name}.toml", env!("CARGO_MANIFEST_DIR"))
}

fn qstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qstab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn build_reports_the_five_qubit_code() {
    for name in ["five-qubit", "five-qubit-cyclic", "five-qubit-symplectic"] {
        let out = qstab(&["build", "--spec", &spec(name)]);
        assert!(out.status.success(), "{name}: {}", stderr(&out));
        assert!(stdout(&out).starts_with("[[5,1,3]]_2 (d exact)\n"), "{name}: {}", stdout(&out));
    }
    let out = qstab(&["build", "--spec", &spec("five-qubit")]);
    assert!(stdout(&out).contains("symplectic-side distance: 3 (agrees)"));
}

#[test]
fn build_covers_the_other_examples() {
    for (name, params) in [("trivial", "[[4,4,1]]_2"), ("f16-four", "[[4,0,3]]_2^2")] {
        let out = qstab(&["build", "--spec", &spec(name)]);
        assert!(out.status.success(), "{name}: {}", stderr(&out));
        assert!(stdout(&out).starts_with(params), "{name}: {}", stdout(&out));
    }
}

#[test]
fn non_orthogonal_rows_exit_2_and_are_named() {
    let out = qstab(&["build", "--spec", &spec("not-orthogonal")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("rows 1 and 2"), "{}", stderr(&out));
}

#[test]
fn parse_errors_exit_1_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "p = 2\nm = 1\nn = 3\nrows = [\"11\"\n").unwrap();
    let out = qstab(&["build", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bad.toml:4:"), "{}", stderr(&out));

    fs::write(&path, "p = 2\nm = 1\nn = 3\nconstruction = \"generator-rows\"\nrows = [\"120\"]\ncolour = 1\n").unwrap();
    let out = qstab(&["build", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn missing_files_and_bad_flags_exit_1() {
    assert_eq!(qstab(&["build", "--spec", "/nonexistent/x.toml"]).status.code(), Some(1));
    assert_eq!(qstab(&["simulate"]).status.code(), Some(1));
    assert_eq!(qstab(&["--help"]).status.code(), Some(0));
}

#[test]
fn exhaustive_weight_one_succeeds() {
    for decoder in ["table", "bm"] {
        let out = qstab(&["simulate", "--spec", &spec("five-qubit"), "--exhaustive-weight", "1", "--decoder", decoder]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stdout(&out).ends_with("SUMMARY trials=15 successes=15 exact=15 degenerate=0 detected=0 logical=0\n"));
    }
}

#[test]
fn zero_trials_is_not_an_error() {
    let out = qstab(&["simulate", "--spec", &spec("five-qubit"), "--trials", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("trials: 0"));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["simulate", "--spec", &spec("five-qubit"), "--trials", "500", "--seed", "99", "--weight", "2"];
    let a = qstab(&args);
    let b = qstab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed: 99"));
}

#[test]
fn bm_on_a_symplectic_only_code_exits_2() {
    let out = qstab(&["simulate", "--spec", &spec("five-qubit-symplectic"), "--decoder", "bm"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_bounds_exit_3() {
    // the distance falls back to the BCH bound; the table then hits the bound
    let sim = qstab(&["simulate", "--spec", &spec("bch-15"), "--max-enum", "100", "--trials", "1"]);
    assert_eq!(sim.status.code(), Some(3), "{}", stderr(&sim));
}

#[test]
fn decode_prints_a_transcript() {
    let out = qstab(&["decode", "--spec", &spec("five-qubit"), "--error", "00100|00100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("estimate=00100|00100"));
    assert!(text.contains("residual=exact"));
    let bad = qstab(&["decode", "--spec", &spec("five-qubit"), "--error", "0010|00100"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn search_lists_candidates() {
    let out = qstab(&["search", "--p", "2", "--n", "5", "--k", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.contains("[[5,1,3]]_2 (d exact)")), "{text}");
    assert!(text.contains("construction = \"generator-rows\""));

    let none = qstab(&["search", "--p", "2", "--n", "5", "--k", "1", "--budget", "0"]);
    assert!(none.status.success());
    assert!(stdout(&none).contains("found: 0"));

    let qutrit = qstab(&["search", "--p", "3", "--n", "4", "--k", "2"]);
    assert!(qutrit.status.success());
    assert!(stdout(&qutrit).contains("[[4,2,2]]_3"));
}

#[test]
fn search_output_builds_back_to_the_same_code() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("best.toml");
    let out = qstab(&["search", "--p", "2", "--n", "5", "--k", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let rebuilt = qstab(&["build", "--spec", path.to_str().unwrap()]);
    assert!(rebuilt.status.success(), "{}", stderr(&rebuilt));
    assert!(stdout(&rebuilt).starts_with("[[5,1,3]]_2 (d exact)"));
}

#[test]
fn build_out_writes_a_verified_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("record.toml");
    let out = qstab(&["build", "--spec", &spec("f16-four"), "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("[record]"), "{text}");
    let again = qstab(&["build", "--spec", path.to_str().unwrap()]);
    assert!(again.status.success(), "{}", stderr(&again));

    // a record that disagrees with the code is refused
    let tampered = text.replacen("k = 0", "k = 1", 1);
    assert_ne!(tampered, text);
    fs::write(&path, tampered).unwrap();
    let refused = qstab(&["build", "--spec", path.to_str().unwrap()]);
    assert!(!refused.status.success());
}

#[test]
fn punctured_spec_builds_and_decodes() {
    let out = qstab(&["build", "--spec", &spec("bch-15-punctured")]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("[[14,4,4]]_2"));
    let sim = qstab(&[
        "simulate", "--spec", &spec("bch-15-punctured"), "--decoder", "bm", "--exhaustive-weight", "1",
    ]);
    assert!(sim.status.success(), "{}", stderr(&sim));
    assert!(stdout(&sim).contains("SUMMARY trials=42 successes=42"));
}
