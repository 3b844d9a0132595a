//! End-to-end runs of the command-line binary: outputs and exit statuses.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("relaxrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_relaxrep"));
    cmd.args(args).env_remove("RELAXREP_VERIFY_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const TWO_CYCLE: &str = "graph 2 2 directed\n1 2\n2 1\n";
const SQUARE: &str = "g1 = var x1\ng2 = var x2\ng3 = add g1 g2\ng4 = mul g3 g3\noutput g4\n";

#[test]
fn rpath_on_two_cycle() {
    let g = fixture("two_cycle.txt", TWO_CYCLE);
    let out = run(&[
        "rpath",
        "--graph",
        g.to_str().unwrap(),
        "--r",
        "2",
        "--k",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "found weight=4\nwitness 1 2 1 2\n");
    let out = run(&[
        "rpath",
        "--graph",
        g.to_str().unwrap(),
        "--r",
        "2",
        "--k",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "not found is a success");
    assert_eq!(stdout(&out), "not found\n");
}

#[test]
fn verify_msep_holds() {
    let out = run(&["verify", "msep", "--n", "2", "--r", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "holds\n");
}

#[test]
fn monomial_square_of_sum() {
    let c = fixture("square.txt", SQUARE);
    let out = run(&[
        "monomial",
        "--circuit",
        c.to_str().unwrap(),
        "--r",
        "1",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("found x1*x2"), "{}", stdout(&out));
}

#[test]
fn json_summary_fields() {
    let c = fixture("square_json.txt", SQUARE);
    let out = run(&[
        "--json",
        "monomial",
        "--circuit",
        c.to_str().unwrap(),
        "--r",
        "1",
        "--k",
        "2",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in [
        "command",
        "parameters",
        "instance_digest",
        "answer",
        "witness",
        "family_sizes",
        "wall_time_ms",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "monomial");
}

#[test]
fn exit_statuses() {
    // Usage errors.
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["msep", "--n", "2", "--r", "3", "--k", "2"])
            .status
            .code(),
        Some(2)
    );
    // Missing file.
    assert_eq!(
        run(&[
            "rpath",
            "--graph",
            "/nonexistent/g.txt",
            "--r",
            "1",
            "--k",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
    // Parse errors.
    let bad = fixture("bad_circuit.txt", "g1 = sub g1 g1\noutput g1\n");
    let out = run(&[
        "monomial",
        "--circuit",
        bad.to_str().unwrap(),
        "--r",
        "1",
        "--k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    let bad = fixture("bad_graph.txt", "graph 2 1 directed\n1 3\n");
    assert_eq!(
        run(&[
            "rpath",
            "--graph",
            bad.to_str().unwrap(),
            "--r",
            "1",
            "--k",
            "1"
        ])
        .status
        .code(),
        Some(3)
    );
    // Budget refusal, overridden from the environment.
    let out = run_env(
        &["verify", "sepfam", "--n", "6", "--t", "2", "--k", "4"],
        &[("RELAXREP_VERIFY_BUDGET", "10")],
    );
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(
        run(&["verify", "sepfam", "--n", "6", "--t", "2", "--k", "4"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn summaries_are_reproducible() {
    let g = fixture("two_cycle_json.txt", TWO_CYCLE);
    let args = [
        "--json",
        "rpath",
        "--graph",
        g.to_str().unwrap(),
        "--r",
        "2",
        "--k",
        "4",
    ];
    let strip = |out: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v.to_string()
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn builders_write_parseable_files() {
    let dir = std::env::temp_dir().join(format!("relaxrep-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sep.txt");
    let out = run(&[
        "msep",
        "--n",
        "3",
        "--r",
        "2",
        "--k",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let sep: relaxrep::msep::MultisetSeparator = text.parse().unwrap();
    assert_eq!(sep.to_text(), text);
}
