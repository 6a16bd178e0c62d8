//! End-to-end runs of the `growthlab` binary: outputs, exit codes and
//! configuration precedence.

use std::io::Write;
use std::process::{Command, Output};

fn growthlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_growthlab"))
        .args(args)
        .env_remove("GROWTHLAB_CAP")
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn growth_csv() {
    let o = growthlab(&["growth", "--group", "z:2", "--radius", "10"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,sphere,gamma,naive,upper");
    assert_eq!(lines.len(), 12);
    let last: Vec<&str> = lines[11].split(',').collect();
    assert_eq!((last[0], last[1], last[2]), ("10", "40", "221"));
    assert_eq!(last[3].split('.').nth(1).unwrap().len(), 12);
}

#[test]
fn growth_json() {
    let o = growthlab(&["growth", "--group", "free:2", "--radius", "3", "--out", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[3]["gamma"], 53);
    assert!(v[0]["naive"].is_null());
}

#[test]
fn rate_bound_json() {
    let o = growthlab(&["paper-bound", "--d", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alpha"], 48);
    assert_eq!(v["beta"], 44);
    assert_eq!(v["omega_alpha"].to_string(), "1.014545334938");
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        &["growth", "--group", "nonsense:1", "--radius", "3"][..],
        &["growth", "--group", "z:x", "--radius", "3"],
        &["growth", "--group", "lamplighter:1", "--radius", "3"],
        &["growth", "--group", "z:2", "--radius", "3", "--precision", "5"],
        &["growth", "--group", "z:2", "--radius", "3", "--out", "dot"],
        &["witness", "--group", "free:2", "--v", "q", "--w", "y", "--p-max", "3"],
        &["converge", "--group-a", "z:1", "--group-b", "z:2", "--max-radius", "3"],
        &["growth", "--group", "z:2"],
    ] {
        let o = growthlab(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn collision_exits_3() {
    let o = growthlab(&["witness", "--group", "z:2", "--v", "x", "--w", "y", "--p-max", "4"]);
    assert_eq!(code(&o), 3);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["injective"], false);
    assert_eq!(v["collision"], serde_json::json!(["01", "10"]));
}

#[test]
fn injective_witness_exits_0() {
    let o = growthlab(&["witness", "--group", "lamplighter:2", "--v", "t", "--w", "a", "--p-max", "8", "--check-radius", "8"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["injective"], true);
    assert_eq!(v["omega_lower"].to_string(), "1.414213562373");
    assert_eq!(v["gamma_lower_checked"], 8);
}

#[test]
fn budget_and_cap_exit_4() {
    let o = growthlab(&["witness", "--group", "free:2", "--v", "x", "--w", "y", "--p-max", "30"]);
    assert_eq!(code(&o), 4);
    let o = growthlab(&["growth", "--group", "free:2", "--radius", "10", "--cap", "100"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_growthlab"))
        .args(["growth", "--group", "free:2", "--radius", "8"])
        .env("GROWTHLAB_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(code(&o), 4);
    // the flag wins over the environment
    let o = Command::new(env!("CARGO_BIN_EXE_growthlab"))
        .args(["growth", "--group", "free:2", "--radius", "8", "--cap", "100000"])
        .env("GROWTHLAB_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn config_file_precedence() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "cap = 50\nout = \"json\"").unwrap();
    let path = cfg.path().to_str().unwrap();

    let o = growthlab(&["growth", "--group", "free:2", "--radius", "8", "--config", path]);
    assert_eq!(code(&o), 4);
    let o = growthlab(&["growth", "--group", "z:1", "--radius", "3", "--config", path]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_start().starts_with('['));
    let o = growthlab(&["growth", "--group", "z:1", "--radius", "3", "--config", path, "--out", "csv"]);
    assert!(stdout(&o).starts_with("n,sphere"));

    let env_beats_file = Command::new(env!("CARGO_BIN_EXE_growthlab"))
        .args(["growth", "--group", "free:2", "--radius", "8", "--config", path])
        .env("GROWTHLAB_CAP", "1000000")
        .output()
        .unwrap();
    assert_eq!(code(&env_beats_file), 0);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = 3").unwrap();
    let o = growthlab(&["growth", "--group", "z:1", "--radius", "3", "--config", bad.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("gamma.csv");
    let o = growthlab(&["growth", "--group", "z:1", "--radius", "2", "--output", target.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), "n,sphere,gamma,naive,upper\n0,1,1,,\n1,2,3,3.000000000000,3.000000000000\n2,2,5,2.236067977500,2.236067977500\n");
}

#[test]
fn outputs_independent_of_workers() {
    for (cmd, group) in [("growth", "grigorchuk:(012)*"), ("growth", "lamplighter:2"), ("omega", "heisenberg")] {
        let runs: Vec<Vec<u8>> = ["1", "3", "8"]
            .iter()
            .map(|w| growthlab(&[cmd, "--group", group, "--radius", "8", "--workers", w]).stdout)
            .collect();
        assert!(runs.windows(2).all(|p| p[0] == p[1]), "{cmd} {group}");
    }
}

#[test]
fn other_commands() {
    let o = growthlab(&["crosscheck-t24", "--group", "lamplighter:2", "--radius", "8", "--p-max", "8"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "PASS");

    let o = growthlab(&["commutators", "--k", "2", "--n", "3"]);
    assert_eq!(stdout(&o), "i,set_size,depth,f_i,equal\n1,4,1,1,true\n2,8,4,4,true\n3,48,10,10,true\n");

    let o = growthlab(&["lemma71", "--limit", "grigorchuk:(012)*", "--group", "grigorchuk:012(0)*", "--group", "grigorchuk:012012(0)*", "--m", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("i,conv_radius,gamma_i_m,gamma_lim_m,upper_i_m\n1,"));

    let o = growthlab(&["hvw", "--group", "lamplighter:2", "--v", "t", "--w", "a", "--l-max", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["status"], "exact-infinite");

    let o = growthlab(&["ball-iso", "--group-a", "z:1", "--group-b", "cyclic:5", "--radius", "2", "--out", "dot"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("digraph").count(), 2);

    let o = growthlab(&["witness-search", "--group", "bs:1,2", "--max-word-len", "2", "--p-max", "8"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cost"], 2);
}

#[test]
fn help_lists_flags() {
    let top = stdout(&growthlab(&["--help"]));
    for cmd in ["growth", "omega", "witness", "witness-search", "hvw", "ball-iso", "converge", "lemma71", "commutators", "paper-bound", "crosscheck-t24"] {
        assert!(top.contains(cmd), "{cmd}");
    }
    let sub = stdout(&growthlab(&["growth", "--help"]));
    for flag in ["--cap", "--workers", "--precision", "--out", "--output", "--config", "GROWTHLAB_CAP"] {
        assert!(sub.contains(flag), "{flag}");
    }
}
