use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kingship"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

// 0 → 1 → 2 → 0
const TRIANGLE: &str = "nodes 3\nedge 0 1\nedge 1 2\nedge 2 0\n";
// x → y iff x = 0 and y = 1, on one-bit nodes.
const ZERO_BEATS_ONE: &str = "inputs 2\ng0 INPUT 0\ng1 NOT g0\ng2 INPUT 1\ng3 AND g1 g2\noutput g3\n";

#[test]
fn verify_reports_agreement_and_exit_zero() {
    let o = run(&["verify", "--suite", "claim2.2:n=1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("16/16 agree"));
}

#[test]
fn verify_records_and_seed() {
    let o = run(&["verify", "--suite", "lemma4.3:n=2", "--seed", "3", "--records"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("suite=lemma4.3:n=2 instances=1000 agree=1000 disagree=0"));
}

#[test]
fn verify_failing_suite_exits_one() {
    let o = run(&["verify", "--suite", "claim2.8"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("disagreement"));
}

#[test]
fn verify_unknown_suite_is_input_error() {
    assert_eq!(code(&run(&["verify", "--suite", "claim9.9"])), 2);
}

#[test]
fn verify_lists_suites() {
    let o = run(&["verify", "--list"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "weave-kkings:k=3:m=13"));
}

#[test]
fn spec_king_on_max() {
    let o = run(&["spec", "king", "--spec", "max", "--node", "1111", "--k", "1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "true"));
    let o = run(&["spec", "king", "--spec", "max", "--node", "1110", "--k", "2"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "false"));
}

#[test]
fn spec_select_prints_winner() {
    let o = run(&["spec", "select", "--spec", "max", "01", "10"]);
    assert_eq!(stdout(&o).trim(), "10");
    let o = run(&["spec", "select", "--spec", "pi2:ttfe", "1", "0000"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn spec_materialize_text_and_dot() {
    let dir = TempDir::new().unwrap();
    let o = run(&["spec", "materialize", "--spec", "max", "--m", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("nodes 4\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("edge")).count(), 6);

    let dot = dir.path().join("t.dot");
    let o = run(&[
        "spec",
        "materialize",
        "--spec",
        "max",
        "--m",
        "2",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let dot = fs::read_to_string(&dot).unwrap();
    assert!(dot.starts_with("digraph G {") && dot.contains("\"11\" -> \"00\";"));
}

#[test]
fn spec_validate_exhaustive_and_sampled() {
    let o = run(&["spec", "validate", "--spec", "conp:ttplain", "--m", "8"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    let o = run(&[
        "spec",
        "validate",
        "--spec",
        "np:ttplain",
        "--m",
        "30",
        "--sample",
        "2000",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn spec_assoc_fails_for_pi2() {
    let o = run(&[
        "spec", "assoc", "--spec", "pi2:ttfe", "--m", "12", "--sample", "200000", "--seed", "7",
    ]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    let o = run(&["spec", "assoc", "--spec", "max", "--m", "5"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn cap_exceeded_exits_three() {
    let o = run(&["spec", "materialize", "--spec", "max", "--m", "20"]);
    assert_eq!(code(&o), 3);
    let o = run(&["--max-nodes", "8", "spec", "materialize", "--spec", "max", "--m", "4"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn king_check_and_find() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", TRIANGLE);
    let o = run(&["king", "check", "--graph", &g, "--node", "0", "--k", "2"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "true"));
    let o = run(&["king", "check", "--graph", &g, "--node", "0", "--k", "1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "false"));
    let o = run(&["king", "find", "--graph", &g]);
    assert_eq!(code(&o), 0);
    assert!(["0", "1", "2"].contains(&stdout(&o).trim()));
    let o = run(&["king", "find", "--graph", &g, "--k", "1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "none"));
}

#[test]
fn king_check_usage_errors() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", TRIANGLE);
    assert_eq!(
        code(&run(&["king", "check", "--graph", &g, "--node", "7", "--k", "0"])),
        2
    );
    assert_eq!(
        code(&run(&["king", "check", "--graph", &g, "--node", "7", "--k", "2"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "king", "check", "--graph", &g, "--node", "0", "--k", "2", "--bogus"
        ])),
        2
    );
    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&run(&["king", "find", "--graph", missing.to_str().unwrap()])), 2);
    let bad = write(&dir, "bad.txt", "nodes 2\nedge 0 5\n");
    assert_eq!(code(&run(&["king", "find", "--graph", &bad])), 2);
}

#[test]
fn reduce_and_decide() {
    let o = run(&["reduce", "--kind", "conp", "--formula", "x1 | !x1", "--decide"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("target: Kings[conp:ttplain]") && out.contains("king: true"));

    let o = run(&["reduce", "--kind", "np", "--formula", "x1 & !x1", "--decide"]);
    assert_eq!(code(&o), 1);

    for (kind, formula, want) in [
        ("pi2", "fe:n=1:x1 | y1", 0),
        ("2partite", "fe:n=1:x1 | y1", 0),
        ("gw-antenna:3", "fe:n=1:x1 & y1", 1),
        ("onekings", "x1 | !x2", 1),
    ] {
        let o = run(&["reduce", "--kind", kind, "--formula", formula, "--decide"]);
        assert_eq!(code(&o), want, "{kind}: {}", stdout(&o));
    }

    let o = run(&[
        "reduce",
        "--kind",
        "kkings:3",
        "--codec",
        "catalog",
        "--formula",
        "fe:n=2:x1 | y1",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("m: 13"));
}

#[test]
fn reduce_rejects_unknown_kind() {
    assert_eq!(code(&run(&["reduce", "--kind", "sat", "--formula", "x1"])), 2);
    assert_eq!(code(&run(&["reduce", "--kind", "kkings:x", "--formula", "x1"])), 2);
}

#[test]
fn reduce_maps_non_formulas_to_a_non_king() {
    let o = run(&["reduce", "--kind", "conp", "--formula", "x1 &", "--decide"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("expected: false"));
}

#[test]
fn gw_commands() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.txt", ZERO_BEATS_ONE);
    let o = run(&["gw", "is-tournament", "--circuit", &c]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "true"));
    assert_eq!(
        code(&run(&["gw", "king", "--circuit", &c, "--node", "0", "--k", "1"])),
        0
    );
    assert_eq!(
        code(&run(&["gw", "king", "--circuit", &c, "--node", "1", "--k", "3"])),
        1
    );
    assert_eq!(
        code(&run(&["gw", "king", "--circuit", &c, "--node", "01", "--k", "1"])),
        2
    );
}

#[test]
fn mpt_commands() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.txt", ZERO_BEATS_ONE);
    let args = ["--circuit", c.as_str(), "--j", "2", "--n", "0"];
    let king = |node: &str, k: &str| {
        let mut a = vec!["mpt", "king"];
        a.extend(args);
        a.extend(["--node", node, "--k", k]);
        code(&run(&a))
    };
    // Input 1 of the circuit is part 1's marker bit, so part 2 wins.
    assert_eq!(king("2:", "1"), 0);
    assert_eq!(king("1:", "3"), 1);

    let out = dir.path().join("lifted.txt");
    let mut a = vec!["mpt", "lift-k"];
    a.extend(args);
    a.extend(["--node", "1:", "--out", out.to_str().unwrap()]);
    let o = run(&a);
    assert_eq!(code(&o), 0);
    let stderr = String::from_utf8_lossy(&o.stderr).into_owned();
    let z = stderr
        .split_whitespace()
        .find_map(|f| f.strip_prefix("z="))
        .expect("z reported")
        .to_string();
    let lifted = out.to_str().unwrap();
    // w = 1: is no k-king for any k, so z is no (k+1)-king.
    let o = run(&[
        "mpt",
        "king",
        "--circuit",
        lifted,
        "--j",
        "2",
        "--n",
        "1",
        "--node",
        &z,
        "--k",
        "4",
    ]);
    assert_eq!(code(&o), 1);

    let mut a = vec!["mpt", "lift-j"];
    a.extend(args);
    let o = run(&a);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("inputs 3\n"));
    assert!(Path::new(lifted).exists());
}

#[test]
fn decisions_are_deterministic() {
    let args = [
        "spec", "validate", "--spec", "pi2:ttfe", "--m", "40", "--sample", "500", "--seed", "9",
    ];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}
