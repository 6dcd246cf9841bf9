use std::process::Command;

use hypergiant::cli::{parse_args, render, Command as Cmd, Format};
use hypergiant::Error;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypergiant"))
}

fn args(s: &str) -> Vec<String> {
    std::iter::once("hypergiant").chain(s.split_whitespace()).map(String::from).collect()
}

#[test]
fn generate_svg_has_one_mark_per_vertex_and_edge() {
    let cfg = parse_args(args("generate --n 500 --alpha 0.7 --nu 2 --seed 7 --format svg")).unwrap();
    let out = render(&cfg).unwrap();
    let svg = String::from_utf8(out.body).unwrap();
    let json = parse_args(args("generate --n 500 --alpha 0.7 --nu 2 --seed 7 --format json")).unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&render(&json).unwrap().body).unwrap();
    assert_eq!(svg.matches("class=\"v\"").count(), 500);
    assert_eq!(svg.matches("class=\"e\"").count() as u64, doc["result"]["edge_count"].as_u64().unwrap());
    assert!(svg.contains("viewBox=\"0 0 1000 1000\""));
    assert!(svg.contains("\"seed\":7"));
    assert_eq!(doc["config"]["seed"], 7);
}

#[test]
fn csv_outputs_start_with_the_config() {
    let cfg = parse_args(args("generate --n 50 --alpha 0.9 --nu 1 --seed 2")).unwrap();
    assert_eq!(cfg.format, Format::Csv);
    let body = String::from_utf8(render(&cfg).unwrap().body).unwrap();
    let mut lines = body.lines();
    assert!(lines.next().unwrap().starts_with("# config: {"));
    assert_eq!(lines.next().unwrap(), "label,r,theta");
    assert_eq!(lines.count(), 50);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for line in [
        "generate --n 800 --alpha 0.8 --nu 1 --seed 11",
        "components --n 800 --alpha 0.8 --nu 1 --seed 11 --poissonized",
        "theta --alpha 0.8 --lambda 1 --replicas 40 --seed 3 --format csv",
        "lln --alpha 1 --nu 2 --nlist 200,400 --replicas 3 --seed 5",
        "couple-check --n 1000 --alpha 0.8 --nu 1 --seed 5",
    ] {
        let a = render(&parse_args(args(line)).unwrap()).unwrap();
        let b = render(&parse_args(args(line)).unwrap()).unwrap();
        assert_eq!(a, b, "{line}");
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"alpha": 0.8, "nu": 1.0, "n": 100, "seed": 9, "format": "json"}"#).unwrap();
    let cfg = parse_args(args(&format!("components --config {} --n 200", path.display()))).unwrap();
    assert_eq!(cfg.command, Cmd::Components);
    assert_eq!(cfg.usize("n").unwrap(), 200);
    assert_eq!(cfg.seed, 9);
    assert_eq!(cfg.format, Format::Json);
}

#[test]
fn unknown_keys_and_bad_formats_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"alpha": 0.8, "nu": 1.0, "n": 100, "colour": "red"}"#).unwrap();
    let err = parse_args(args(&format!("components --config {}", path.display()))).unwrap_err();
    assert!(matches!(err, Error::Usage(_)));
    let cfg = parse_args(args("theta --alpha 0.8 --lambda 1 --format svg")).unwrap();
    assert!(matches!(render(&cfg), Err(Error::Usage(_))));
}

#[test]
fn exit_codes() {
    let ok = bin().args(["generate", "--n", "20", "--alpha", "0.8", "--nu", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = bin().args(["generate", "--n", "20", "--alpha", "0.8"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let bad_flag = bin().args(["lln", "--colour", "red"]).output().unwrap();
    assert_eq!(bad_flag.status.code(), Some(2));
    let domain = bin().args(["generate", "--n", "20", "--alpha=-1", "--nu", "1"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
    let tiny = bin().args(["generate", "--n", "1", "--alpha", "0.8", "--nu", "2"]).output().unwrap();
    assert_eq!(tiny.status.code(), Some(1));
}

#[test]
fn selftest_passes_and_thread_cap_is_honoured() {
    let out = bin().arg("selftest").env("HYPERGIANT_THREADS", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.starts_with("ok ")));
    let bad = bin().arg("selftest").env("HYPERGIANT_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn files_are_written_where_asked() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let edges = dir.path().join("e.csv");
    let status = bin()
        .args(["generate", "--n", "300", "--alpha", "0.8", "--nu", "1", "--seed", "4", "--out"])
        .arg(&out)
        .arg("--edges-out")
        .arg(&edges)
        .status()
        .unwrap();
    assert!(status.success());
    let e = std::fs::read_to_string(&edges).unwrap();
    assert!(e.starts_with("# config: "));
    assert_eq!(e.lines().nth(1), Some("source,target"));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 302);
}
