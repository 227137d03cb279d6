use std::path::Path;
use std::process::{Command, Output};

fn loday(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loday")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn zero_bracket_passes() {
    let o = loday(&["examples", "zero-bracket-dim3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: ok"));
}

#[test]
fn hemisemidirect_reports_lie_failure_as_fact() {
    let o = loday(&["examples", "hemisemidirect-sl2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lie = out.lines().find(|l| l.contains(" Lie ")).unwrap();
    assert!(lie.trim_start().starts_with("fact") && lie.contains("fail"), "{lie}");
    let left = out.lines().find(|l| l.contains("left Leibniz ")).unwrap();
    assert!(left.contains("pass"));
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "bad.toml",
        "kind = \"bracket\"\nname = \"bad\"\n[bracket]\ndim = 2\nentries = [[0, 1, 1, \"1/0\"]]\n",
    );
    let o = loday(&["check", &file]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bracket.entries[0]"), "{err}");
}

#[test]
fn missing_file_and_unknown_names_exit_2() {
    assert_eq!(loday(&["check", "/nonexistent/x.toml"]).status.code(), Some(2));
    assert_eq!(loday(&["examples", "no-such-example"]).status.code(), Some(2));
    assert_eq!(loday(&["random", "--kind", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(loday(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn exterior_and_omni_witnesses_pass() {
    for name in ["e1-witness", "e1-nonconstant", "omni-jacobiator", "omni-loday-grid"] {
        let o = loday(&["examples", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
    let out = stdout(&loday(&["examples", "e1-witness"]));
    assert!(out.contains("-2*dx1∧dx2∧dx3∧dx4∧dx5∧dx6"));
}

#[test]
fn random_graph_closure_agrees() {
    let o = loday(&["random", "--kind", "p1", "--dim", "3", "--count", "500", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("agreements: 500/500"));
}

#[test]
fn random_edge_cases() {
    let o = loday(&["random", "--kind", "p1", "--dim", "3", "--count", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("agreements: 0/0"));
    assert_eq!(loday(&["random", "--kind", "p1", "--dim", "9"]).status.code(), Some(2));
    let high = loday(&["random", "--kind", "p1", "--dim", "5", "--count", "2", "--max-dim", "5"]);
    assert_eq!(high.status.code(), Some(0));
}

#[test]
fn random_counterexample_is_a_loadable_file() {
    let o = loday(&["random", "--kind", "qd-rank1", "--count", "2000", "--machine"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let toml = v["counterexample"]["instance"].as_str().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "ce.toml", toml);
    let c = loday(&["check", &file]);
    assert_eq!(c.status.code(), Some(1));
    assert!(stdout(&c).contains("rank-one QD-Loday is Lie"));
}

#[test]
fn emitted_instances_reproduce_reports() {
    let dir = tempfile::tempdir().unwrap();
    let list = stdout(&loday(&["examples", "--list"]));
    let mut checked = 0;
    for name in list.lines().map(|l| l.split_whitespace().next().unwrap()) {
        let emitted = loday(&["examples", name, "--emit"]);
        if emitted.status.code() == Some(2) {
            continue;
        }
        let file = write(dir.path(), &format!("{name}.toml"), &stdout(&emitted));
        let direct = loday(&["examples", name, "--machine"]);
        let via_file = loday(&["check", &file, "--machine"]);
        assert_eq!(stdout(&direct), stdout(&via_file), "{name}");
        assert_eq!(direct.status.code(), via_file.status.code(), "{name}");
        checked += 1;
    }
    assert!(checked >= 20, "{checked}");
}

#[test]
fn runs_are_byte_identical() {
    for args in [
        &["examples", "dorfman-checks", "--samples", "10"][..],
        &["random", "--kind", "omni", "--count", "20", "--seed", "7"],
        &["examples", "so3-perturbed", "--machine"],
    ] {
        assert_eq!(stdout(&loday(args)), stdout(&loday(args)), "{args:?}");
    }
}

#[test]
fn machine_output_is_json_lines() {
    let o = loday(&["examples", "sl2", "--machine"]);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["report"], "sl2");
        assert!(["pass", "fail", "not-applicable", "note"].contains(&v["status"].as_str().unwrap()));
    }
}

#[test]
fn all_examples_report_the_rank_one_counterexample() {
    let o = loday(&["examples", "--all"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("failing: qd-rank1-nilpotent"));
    assert!(out.contains("failing: qd-rank1-exhaustive"));
    assert!(out.contains("24 of 26 examples pass"));
}
