use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_girthwords")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn probe_word_is_reproducible_across_workers() {
    let args = ["probe-word", "--spec", "sym:4", "--word", "x1 x2 x1^-1 x2^-1", "--samples", "20000", "--seed", "42"];
    let a = run(&[&args[..], &["--workers", "1"]].concat());
    let b = run(&[&args[..], &["--workers", "4"]].concat());
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("spec,word,trial,seed,"));
    assert!(text.contains("0.20833333333333334"));
}

#[test]
fn missing_seed_is_a_usage_error() {
    let o = run(&["girth", "--spec", "sym:5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--seed"));
}

#[test]
fn bad_spec_is_a_usage_error() {
    assert_eq!(run(&["girth", "--spec", "sl:3:6", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--spec", "sym:5", "--len", "3"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn capacity_exit_code() {
    let o = run(&["diameter", "--spec", "sym:9", "--cap", "1000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["girth", "--spec", "sym:10", "--element-cap", "8", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains(",capacity"));
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("no").join("such.csv");
    let o = run(&["bounds", "--spec", "sl:8:2", "--len", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn girth_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("g.svg");
    let o = run(&["girth", "--spec", "sl:3:2", "--trials", "5", "--seed", "7", "--format", "json", "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_start().starts_with('['));
    let chart = std::fs::read_to_string(svg).unwrap();
    assert_eq!(chart.matches("<polyline").count(), 1);
}

#[test]
fn diameter_rows() {
    let o = run(&["diameter", "--spec", "sym:5", "--k", "2", "--trials", "3", "--seed", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn trajectory_rows() {
    let o = run(&["trajectory", "--spec", "sl:8:2", "--word", "x1 x2 x1", "--trials", "500", "--seed", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().contains("bound"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn experiment_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dg.cfg");
    let out = dir.path().join("dg.csv");
    std::fs::write(&cfg, format!("kind = dg_scan\nspecs = sl:2:5, sl:2:7\nk = 2\ntrials = 3\nseed = 11\nout = {}\n", out.display())).unwrap();
    let o = run(&["experiment", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(!text.contains("NA"));

    std::fs::write(&cfg, "kind = dg_scan\nspecs = sl:2:5\nseed = x\n").unwrap();
    assert_eq!(run(&["experiment", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["experiment", "--config", "/nonexistent/cfg"]).status.code(), Some(4));
}
