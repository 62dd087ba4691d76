use std::path::PathBuf;
use std::process::Command;

use hypertoric::cli::{execute, TheoryConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypertoric"))
}

fn write_config(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hypertoric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const SQED: &str = r#"{"n":1,"k":1,"iota":[[1]],"alpha":"-","S":[],"mu":[0],"chi":[1],"flavor":"small"}"#;
const PAIR: &str = r#"{"n":2,"k":1,"iota":[[1],[-1]],"alpha":"--","S":[2],"mu":[0,0],"chi":[1],"flavor":"small"}"#;

#[test]
fn classify_sqed() {
    let cfg = write_config("sqed.json", SQED);
    let (code, out, _) = run(&["--config", cfg.to_str().unwrap(), "module-classify"]);
    assert_eq!(code, 0);
    let cells: Vec<&str> = out.trim_end().split('\t').collect();
    assert_eq!(&cells[..3], &["GenericDirichlet", "in_O=true", "simple_probe=true"]);
}

#[test]
fn classify_pair() {
    let cfg = write_config("pair.json", PAIR);
    let (code, out, _) = run(&["--config", cfg.to_str().unwrap(), "module-classify"]);
    assert_eq!(code, 0);
    assert_eq!(out, "ExceptionalDirichlet\tin_O=true\tsimple_probe=false\tverma=CoVerma\tsigma_max=0\n");
}

#[test]
fn commutator_string() {
    let cfg = write_config("sqed-comm.json", SQED);
    let (code, out, _) = run(&["--config", cfg.to_str().unwrap(), "algebra-comm", "--a", "r[1]", "--b", "r[-1]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "-1 * h * r[0]\n");
}

#[test]
fn check_relations_reports_all_passing() {
    let (code, out, _) = run(&["check-relations", "--box", "2", "--trials", "50", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(out, "OK 50/50\n");
    let (code, _, _) = run(&["check-relations", "--box", "2"]);
    assert_eq!(code, 1, "seed is required");
}

#[test]
fn check_relations_on_rank_two() {
    let cfg = write_config(
        "rank2.json",
        r#"{"n":3,"k":2,"iota":[[1,0],[0,1],[1,1]],"alpha":"+-+","S":[3],"mu":[0,1,-1],"chi":[1,0],"flavor":"big"}"#,
    );
    let (code, out, _) = run(&["--config", cfg.to_str().unwrap(), "check-relations", "--seed", "3", "--trials", "20"]);
    assert_eq!(code, 0);
    assert_eq!(out, "OK 20/20\n");
}

#[test]
fn config_errors_list_every_violation() {
    let cfg = write_config("bad.json", r#"{"n":1,"k":1,"iota":[[2]],"alpha":"+-","mu":[0,0]}"#);
    let (code, _, err) = run(&["--config", cfg.to_str().unwrap(), "module-support"]);
    assert_eq!(code, 1);
    assert!(err.contains("unimodularity violated at minor (1)"), "{err}");
    assert!(err.contains("alpha has length 2"), "{err}");
    assert!(err.contains("mu has length 2"), "{err}");

    let e = TheoryConfig::from_json_str(r#"{"n":1,"k":1,"iota":[[1]],"alpha":"++"}"#).unwrap_err();
    assert!(e.to_string().contains("dimension mismatch"));
    assert!(TheoryConfig::from_json_str(SQED).is_ok());
    assert!(TheoryConfig::from_json_str("{").is_err());

    let (code, _, _) = run(&["--config", "/nonexistent/file.json", "module-support"]);
    assert_eq!(code, 1);
}

#[test]
fn domain_errors_exit_two() {
    let (code, _, err) = run(&["module-character", "--chi=-1"]);
    assert_eq!(code, 2);
    assert!(err.contains("unbounded"), "{err}");
    let (code, _, _) = run(&["quiver-count", "--mu", "4,3"]);
    assert_eq!(code, 2);
}

#[test]
fn unknown_command_is_rejected() {
    let (code, _, _) = run(&["module-frobnicate"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["quiver-fixed", "--n", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn json_and_tsv_carry_the_same_rows() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["module-character", "--max-degree", "4"],
        vec!["module-support", "--box", "3"],
        vec!["module-classify"],
        vec!["module-hikita"],
        vec!["module-act", "--a", "r[1] + x1", "--sigma=-2"],
        vec!["algebra-mul", "--a", "r[2]", "--b", "r[-1]"],
        vec!["quiver-gt", "--n", "3", "--degrees", "1,1"],
        vec!["quiver-fixed", "--n", "3", "--degrees", "2,1"],
        vec!["quiver-spaltenstein", "--mu", "2,1"],
        vec!["quiver-drinfeld", "--r", "0,5", "--mu", "2,1"],
        vec!["quiver-count", "--mu", "2,1", "--q", "2,3"],
    ];
    for args in commands {
        let tsv = execute(std::iter::once("hypertoric").chain(args.iter().copied())).unwrap();
        let json = execute(std::iter::once("hypertoric").chain(args.iter().copied()).chain(["--json"])).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        let rows = parsed.as_array().unwrap();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(rows.len(), lines.len(), "{args:?}");
        for (row, line) in rows.iter().zip(lines) {
            let cells: Vec<&str> = line.split('\t').collect();
            let obj = row.as_object().unwrap();
            assert_eq!(obj.len(), cells.len(), "{args:?}");
            for cell in cells {
                let value = cell.split_once('=').map_or(cell, |(_, v)| v);
                let found = obj.values().any(|v| match v {
                    serde_json::Value::String(s) => s == cell || s == value,
                    other => other.to_string() == cell || other.to_string() == value,
                });
                assert!(found, "{args:?}: cell {cell:?} missing from {row}");
            }
        }
    }
}

#[test]
fn emitted_elements_reparse() {
    let out = execute(["hypertoric", "algebra-mul", "--a", "r[1] + x1^2", "--b", "r[-2] + h"]).unwrap();
    let datum = std::sync::Arc::new(hypertoric::TorusDatum::sqed1());
    let parsed = hypertoric::parse::parse_element(out.trim_end(), &datum).unwrap();
    assert_eq!(parsed.to_string(), out.trim_end());
}

#[test]
fn quiver_outputs() {
    let (_, out, _) = run(&["quiver-gt", "--n", "3", "--degrees", "1,1"]);
    assert_eq!(out.lines().count(), 2);
    let (_, out, _) = run(&["quiver-fixed", "--weights", "1", "--box", "2"]);
    assert_eq!(out, "-2\n-1\n0\n");
    let (_, out, _) = run(&["quiver-drinfeld", "--r", "0", "--mu", "2"]);
    assert!(out.starts_with("1 * u^2 - 3 * u + 2\tstrings={1,2}\tratio_holds=true"), "{out}");
    let (_, out, _) = run(&["quiver-spaltenstein", "--mu", "2,1"]);
    assert!(out.contains("total\t6\npredicted\t6\n"), "{out}");
    let (_, out, _) = run(&["quiver-count", "--mu", "1,1", "--r", "1"]);
    assert_eq!(out, "1,1\t1\tq2=3\tq3=4\tq4=5\tq5=6\t1 * q + 1\tfits=true\tat_1=2\tfixed=2\n");
}

#[test]
fn fourier_uses_config_alpha_or_flag() {
    let (_, out, _) = run(&["algebra-fourier", "--a", "x1 + r[-1]", "--alpha", "+"]);
    assert_eq!(out, "-1 * r[-1] + -1 * x1 * r[0]\n");
    let (_, out, _) = run(&["algebra-fourier", "--a", "x1 + r[-1]"]);
    assert_eq!(out, "1 * r[-1] + 1 * x1 * r[0]\n");
}
