use std::fs;
use std::io::Cursor;
use std::path::PathBuf;

use buster_fixer::cli_io::run;

fn scenario() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios/paper_1_2.scn")
        .display()
        .to_string()
}

fn cli(args: &[&str], input: &str) -> (i32, String, String) {
    let mut stdin = Cursor::new(input.as_bytes().to_vec());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("buster-fixer").chain(args.iter().copied());
    let code = run(argv, &mut stdin, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn verify_greedy_response_is_optimal() {
    let (code, out, _) = cli(&["verify", &scenario(), "--busted", "e1,e2", "--candidate", "e4"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("OPTIMAL\n"), "{out}");
    assert!(out.contains("witness: "));
    assert!(out.contains("brute-force oracle: agrees"));
}

#[test]
fn verify_rejects_the_other_responses() {
    for candidate in ["e5", "e4,e5"] {
        let (code, out, err) = cli(
            &["verify", &scenario(), "--busted", "e1,e2", "--candidate", candidate],
            "",
        );
        assert_eq!(code, 1, "{candidate}: {err}");
        assert!(out.starts_with("NOT-OPTIMAL\n"), "{out}");
        assert!(out.contains("brute-force oracle: agrees"));
    }
    let (code, out, _) = cli(
        &[
            "verify",
            &scenario(),
            "--busted",
            "e1,e2",
            "--candidate",
            "e5",
            "--no-bridge-prune",
            "--naive-cap",
            "0",
        ],
        "",
    );
    assert_eq!(code, 1);
    assert!(!out.contains("oracle"));
}

#[test]
fn verify_usage_errors_exit_two() {
    let (code, _, err) = cli(&["verify", &scenario(), "--busted", "e1,e2", "--candidate", "e1"], "");
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = cli(
        &[
            "verify",
            &scenario(),
            "--busted",
            "e1,e2",
            "--candidate",
            "e4",
            "--max-total-edges",
            "4",
        ],
        "",
    );
    assert_eq!(code, 2);
    let (code, _, _) = cli(&["verify", &scenario(), "--busted", "e1,e2"], "");
    assert_eq!(code, 2);
    let (code, _, _) = cli(&["frobnicate"], "");
    assert_eq!(code, 2);
    let (code, _, err) = cli(&["msts", "/nonexistent.scn", "--busted", "e1"], "");
    assert_eq!(code, 2);
    assert!(err.contains("nonexistent"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = cli(&["--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("theorem-sweep"));
}

#[test]
fn msts_lists_the_single_tree() {
    let (code, out, _) = cli(&["msts", &scenario(), "--busted", "e1,e2"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "components: 2\n{e4} weight 1 (Prim from component 0)\n");
    let (code, out, _) = cli(&["msts", &scenario(), "--busted", "e1"], "");
    assert_eq!(code, 0);
    assert!(out.contains("stays connected"));
    let (code, out, _) = cli(&["msts", &scenario(), "--busted", "e1,e2,e3"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "components: 3\n{e4,e5} weight 3 (Prim from component 0)\n");

    let dir = tempfile::tempdir().unwrap();
    let lone = dir.path().join("lone.scn");
    fs::write(&lone, "vertex a\nvertex b\nedge x a b 0 G\nedge y a a 1 R\n").unwrap();
    let (code, out, _) = cli(&["msts", lone.to_str().unwrap(), "--busted", "x"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("Buster wins"));
}

#[test]
fn simulate_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let transcript = dir.path().join("run.txt");
    let path = transcript.to_str().unwrap();
    let (code, out, _) = cli(&["simulate", &scenario(), "--out", path], "");
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = fs::read_to_string(&transcript).unwrap();
    assert!(text.contains("2 | {e3,e4} | {e5} | {e3} | {e5} | 3 | 3 | Fixer"));
    assert!(text.contains("3 | {e4,e5} | {} | {e4} | {} | 4 | 3 | Buster"));
    let (code, out, _) = cli(&["replay", &scenario(), path], "");
    assert_eq!(code, 0, "{out}");

    fs::write(&transcript, text.replace("| 4 | 3 | Buster", "| 4 | 2 | Buster")).unwrap();
    let (code, _, err) = cli(&["replay", &scenario(), path], "");
    assert_eq!(code, 1);
    assert!(err.contains("mismatch"));

    fs::write(&transcript, "not a transcript\n").unwrap();
    let (code, _, _) = cli(&["replay", &scenario(), path], "");
    assert_eq!(code, 2);
}

#[test]
fn seeded_simulation_is_reproducible() {
    let a = cli(&["simulate", &scenario(), "--seed", "7"], "");
    let b = cli(&["simulate", &scenario(), "--seed", "7"], "");
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    assert!(a.1.contains("# seed: 7"));
}

#[test]
fn scenario_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scn");
    fs::write(&bad, "vertex a\nvertex b\nvertex c\nedge x a b 1 G\n").unwrap();
    let (code, _, err) = cli(&["simulate", bad.to_str().unwrap(), "--seed", "1"], "");
    assert_eq!(code, 2);
    assert!(err.contains("disconnected"), "{err}");
    fs::write(&bad, "vertex a\nvertex b\nedge x a b 1 G\n").unwrap();
    let (code, _, err) = cli(&["simulate", bad.to_str().unwrap()], "");
    assert_eq!(code, 2);
    assert!(err.contains("--seed"));
}

#[test]
fn interactive_play_reprompts_and_finishes() {
    let input = "quit\ne9\ne1,e2\ne3\ne4,e5\n";
    let (code, out, _) = cli(&["play", &scenario()], input);
    assert_eq!(code, 0);
    assert!(out.contains("cannot quit before the first round"));
    assert!(out.contains("enter graph edge ids"));
    assert!(out.contains("Fixer adds {e4}"));
    assert!(out.ends_with("result: Buster (Buster, 5, 3)\n"), "{out}");

    let (code, out, _) = cli(&["play", &scenario()], "e1,e2\nquit\n");
    assert_eq!(code, 0);
    assert!(out.ends_with("result: Fixer (Fixer, 2, 1)\n"));

    let (code, out, _) = cli(&["play", &scenario()], "");
    assert_eq!(code, 0);
    assert!(out.contains("no rounds played"));
}

#[test]
fn small_sweep_is_clean() {
    let (code, out, _) = cli(
        &[
            "theorem-sweep",
            "--max-vertices",
            "2",
            "--max-total-edges",
            "3",
            "--naive-cap",
            "3",
        ],
        "",
    );
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("counterexamples: 0"));
    let (code, _, _) = cli(&["theorem-sweep", "--weights", "1,-1"], "");
    assert_eq!(code, 2);
}
