use std::io::Write;
use std::process::{Command, Output};

use skewpbw::corpus::corpus_text;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewpbw"))
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

fn instance_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn check_cyclic_p2_passes_all_conditions() {
    let o = run(&["check", "corpus:cyclic-p2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for id in 1..=5 {
        assert!(out.contains(&format!("condition {id}: pass")), "{out}");
    }
    assert!(out.contains("verdict: PBW"));
}

#[test]
fn identity_lambda_fails_with_witness() {
    let text = "[field]\ncharacteristic = 2\n\n[space]\nbasis = v w\n\n[group]\ngenerators = g\ng = [[1, 1], [0, 1]]\n\n[lambda]\ne v = 1\n";
    let file = instance_file(text);
    let o = run(&["check", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("condition 1: fail"), "{out}");
    assert!(
        out.contains("witness: elements (e, e), vectors (v)"),
        "{out}"
    );
    assert!(out.contains("verdict: not PBW"));
}

#[test]
fn modular_counterexample_has_no_isomorphisms() {
    let o = run(&["iso-search", "corpus:modular-counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("candidates: 65536"), "{out}");
    assert!(out.contains("0 isomorphisms found"), "{out}");
}

#[test]
fn parse_errors_exit_two_with_a_line() {
    let text = "[field]\ncharacteristic = 2\n\n[space]\nbasis = v w\nshape = round\n";
    let file = instance_file(text);
    let o = run(&["check", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 6"), "{}", stderr(&o));
}

#[test]
fn other_errors_exit_three() {
    let o = run(&["check", "corpus:no-such-entry"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cyclic-p2"));
    let o = run(&["convert", "corpus:modular-counterexample"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stderr(&o).contains("divides the group order"),
        "{}",
        stderr(&o)
    );
    let o = run(&["check", "/nonexistent/instance.txt"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn structured_block_carries_every_verdict() {
    let o = run(&["check", "corpus:cyclic-p3", "--structured", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let block = out
        .split("--- structured ---")
        .nth(1)
        .expect("structured block");
    for key in [
        "subcommand = check",
        "condition.1 = pass",
        "condition.5 = pass",
        "verdict = PBW",
        "seed = 9",
        "status = pass",
    ] {
        assert!(block.contains(key), "missing {key} in {block}");
    }
    assert!(block.contains("digest = "));
    assert!(block.trim_end().ends_with("--- end ---"));
}

#[test]
fn file_and_corpus_inputs_agree() {
    let file = instance_file(&corpus_text("s3-coxeter-q").unwrap());
    let a = stdout(&run(&["check", file.path().to_str().unwrap()]));
    let b = stdout(&run(&["check", "corpus:s3-coxeter-q"]));
    assert_eq!(a, b);
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "corpus:cyclic-p5", "--random", "10", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("random cross-check: 10 instances, 0 disagreements"));
}

#[test]
fn other_subcommands_pass_on_the_gallery() {
    for args in [
        vec!["oracle", "corpus:cyclic-p3", "--max-degree", "3"],
        vec!["homology", "corpus:cyclic-p3"],
        vec!["convert", "corpus:s3-coxeter-q"],
        vec!["mu-extract", "corpus:cyclic-p3"],
        vec!["examples", "list"],
        vec!["examples", "run", "general-kappa-fix"],
        vec![
            "iso-search",
            "corpus:cyclic-p2",
            "--target",
            "corpus:general-kappa-fix",
        ],
    ] {
        let o = run(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}{}",
            stdout(&o),
            stderr(&o)
        );
    }
}

#[test]
fn failing_instances_exit_one_everywhere() {
    let o = run(&["oracle", "corpus:bad-identity-lambda"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first unresolved"));
    let o = run(&["homology", "corpus:bad-identity-lambda"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_reports_pbw_dimensions() {
    let o = run(&["oracle", "corpus:cyclic-p2", "--max-degree", "3"]);
    let out = stdout(&o);
    // |G| * binom(n + 2, 2) for n = 0..3
    assert!(
        out.contains("filtered dimensions F_0..F_3: 2 6 12 20"),
        "{out}"
    );
}
