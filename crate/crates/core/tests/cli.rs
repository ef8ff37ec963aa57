mod common;

use iabsim::net_model::load_trace;

use common::*;

#[test]
fn every_subcommand_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let summary = cli_determinism(dir.path()).unwrap();
    assert!(summary.contains("identical"));
}

#[test]
fn generate_writes_a_loadable_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("day.trace");
    let out = cli(&["generate", "--seed", "42", "--out", path.to_str().unwrap()], &[]);
    assert!(out.status.success());
    let day = load_trace(&path).unwrap();
    assert_eq!(day.seed, 42);
    assert_eq!(day.snapshots.len(), 96);
    assert_eq!(day.snapshots[0].nodes.len(), 18);
}

#[test]
fn evaluate_without_checkpoint_reports_missing_model() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["--out-dir", dir.path().to_str().unwrap(), "evaluate"], &[]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing model"));
    let out = cli(&["--out-dir", dir.path().to_str().unwrap(), "compare"], &[]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn usage_and_config_errors() {
    assert_eq!(cli(&["launch"], &[]).status.code(), Some(2));
    assert_eq!(cli(&["generate", "--bogus"], &[]).status.code(), Some(2));
    assert_eq!(cli(&["train-allocator", "--variant", "config9"], &[]).status.code(), Some(2));
    assert_eq!(cli(&["--help"], &[]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.cfg");
    let out = cli(&["--config", missing.to_str().unwrap(), "generate"], &[]);
    assert_eq!(out.status.code(), Some(3));
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "scheduler.alpha = fast\n").unwrap();
    assert_eq!(cli(&["--config", bad.to_str().unwrap(), "generate"], &[]).status.code(), Some(3));
    let out = cli(&["generate"], &[("IABSIM_SCENARIO_ANTENNAS", "0")]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_and_environment_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out_dir = dir.path().join("out");
    std::fs::write(
        &cfg,
        format!("# short run\nscheduler.episodes = 5\noutput.dir = {}\n", out_dir.display()),
    )
    .unwrap();
    let out = cli(&["--config", cfg.to_str().unwrap(), "train-scheduler"], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(out_dir.join("scheduler_rewards.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2 + 5);
    assert!(csv.starts_with(&format!("#iabsim v{} seed=1\n", env!("CARGO_PKG_VERSION"))));

    let out = cli(
        &["--config", cfg.to_str().unwrap(), "train-scheduler"],
        &[("IABSIM_SCHEDULER_EPISODES", "7"), ("IABSIM_SEEDS_TRAIN", "11")],
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(out_dir.join("scheduler_rewards.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2 + 7);
    assert!(csv.lines().next().unwrap().ends_with("seed=11"));
}
