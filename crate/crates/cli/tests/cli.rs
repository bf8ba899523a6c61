use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lia(args: &[&str]) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lia"));
    c.args(args).env_remove("LIA_OUT");
    c
}

fn run(c: &mut Command) -> Output {
    c.output().expect("spawn lia")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("lia-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn small_config(dir: &Path) -> PathBuf {
    let p = dir.join("small.json");
    std::fs::write(
        &p,
        r#"{"topologies": ["internet100"], "n_list": [10], "instances": 30, "lai_samples": 50, "bootstrap_resamples": 50}"#,
    )
    .unwrap();
    p
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&mut lia(&["frobnicate"])).status.code(), Some(1));
    assert_eq!(run(&mut lia(&["sweep", "--jobs", "zero"])).status.code(), Some(1));
    assert_eq!(run(&mut lia(&["topology", "gen", "--kind", "pluto"])).status.code(), Some(1));
    let dir = scratch("usage");
    let cfg = small_config(&dir);
    let out = run(&mut lia(&["lai", "--mechanisms", "", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mechanism"));
}

#[test]
fn config_errors_exit_2_and_name_the_field() {
    let dir = scratch("config");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"batch_ms": [0]}"#).unwrap();
    let out = run(&mut lia(&["sweep", "--config", bad.to_str().unwrap(), "--out", dir.to_str().unwrap()]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("batch_ms"));
    let missing = run(&mut lia(&["sweep", "--config", "/nonexistent/cfg.json"]));
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_names_the_failing_check() {
    let out = run(&mut lia(&["verify", "--triples", "500", "--checks", "100", "--graphs", "50"]));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stdout.contains("PASS k-items payment bidder 3"));
    assert!(stdout.contains("PASS truthfulness and IR"));
    // the quoted timing-rent payment is a rounded figure; see README
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr.contains("timing-rent payment"), "{stderr}");
    assert!(!stderr.contains("k-items"));
}

#[test]
fn sweep_writes_outputs_and_env_overrides_out() {
    let dir = scratch("sweep");
    let cfg = small_config(&dir);
    let flag_dir = dir.join("flag");
    let env_dir = dir.join("env");
    let out = run(lia(&["sweep", "--config", cfg.to_str().unwrap(), "--out", flag_dir.to_str().unwrap()])
        .env("LIA_OUT", &env_dir));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!flag_dir.exists());
    let csv = std::fs::read_to_string(env_dir.join("records.csv")).unwrap();
    assert!(csv.starts_with("topology,mechanism,n,lambda_per_s,epsilon_ms,error_model,seed,"));
    // 30 instances × (3 lia + sync + fast + 3 batch + holdback) + header
    assert_eq!(csv.lines().count(), 1 + 30 * 9);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(env_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["config"]["instances"], 30);
    assert!(String::from_utf8_lossy(&out.stdout).contains("sync_vcg"));
}

#[test]
fn seed_flag_overrides_config() {
    let dir = scratch("seed");
    let cfg = small_config(&dir);
    let records = |seed: &str, sub: &str| {
        let d = dir.join(sub);
        let out = run(&mut lia(&["sweep", "--quiet", "--config", cfg.to_str().unwrap(), "--seed", seed, "--out", d.to_str().unwrap()]));
        assert!(out.status.success());
        assert!(out.stdout.is_empty(), "--quiet prints nothing");
        std::fs::read(d.join("records.csv")).unwrap()
    };
    assert_eq!(records("5", "a"), records("5", "b"));
    assert_ne!(records("5", "a"), records("6", "c"));
}

#[test]
fn lai_writes_curves() {
    let dir = scratch("lai");
    let cfg = small_config(&dir);
    let out = run(&mut lia(&[
        "lai", "--quiet", "--mechanisms", "lia,fast_vcg", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap(),
    ]));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.join("lai_curves.csv")).unwrap();
    assert!(csv.starts_with("topology,mechanism,lambda,delta_ms,g_mean,g_ci_lo,g_ci_hi\n"));
    assert!(csv.lines().any(|l| l.starts_with("internet100,fast_vcg,")));
}

#[test]
fn topology_gen_and_inspect() {
    let dir = scratch("topo");
    let file = dir.join("dsn.json");
    let out = run(&mut lia(&["topology", "gen", "--kind", "dsn30", "--seed", "4", "--out", file.to_str().unwrap()]));
    assert!(out.status.success());
    let out = run(&mut lia(&["topology", "inspect", file.to_str().unwrap()]));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success());
    assert!(text.contains("nodes       30"), "{text}");
    assert!(text.contains("delay (ms)  min"));
    let stdout_json = run(&mut lia(&["topology", "gen", "--kind", "dsn30", "--seed", "4"])).stdout;
    assert_eq!(String::from_utf8_lossy(&stdout_json).trim(), std::fs::read_to_string(&file).unwrap().trim());
}
