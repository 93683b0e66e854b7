//! End-to-end checks of the `qpc` binary: exit codes, seed resolution,
//! output formats, and config plumbing.

use std::process::{Command, Output};

fn qpc() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qpc"));
    // Keep the ambient environment from leaking a seed into the tests.
    cmd.env_remove("QPC_SEED");
    cmd
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

fn stderr_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).unwrap()
}

// ==== argument handling ====

#[test]
fn missing_subcommand_is_a_usage_error() {
    let out = qpc().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("Usage"), "no usage text in {err:?}");
    assert!(err.contains("cascade"), "subcommands not listed in {err:?}");
}

#[test]
fn help_exits_clean() {
    let out = qpc().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    for sub in ["rates", "cascade", "event", "design", "escape", "conformance"] {
        assert!(text.contains(sub), "help is missing {sub}");
    }
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = qpc().args(["escape", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_material_is_a_runtime_error() {
    let out = qpc()
        .args(["rates", "--material", "Kryptonite"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.starts_with("error:"), "unexpected stderr {err:?}");
    assert!(err.contains("Kryptonite"));
}

// ==== seed resolution ====

#[test]
fn seed_env_matches_seed_flag() {
    let args = ["cascade", "--trials", "300", "--ep-over-gap", "8"];
    let flagged = qpc().args(args).args(["--seed", "7"]).output().unwrap();
    let from_env = qpc().args(args).env("QPC_SEED", "7").output().unwrap();
    assert_eq!(flagged.status.code(), Some(0));
    assert_eq!(flagged.stdout, from_env.stdout);
}

#[test]
fn seed_flag_wins_over_env() {
    let args = ["cascade", "--trials", "300", "--ep-over-gap", "8"];
    let flagged = qpc().args(args).args(["--seed", "7"]).output().unwrap();
    let both = qpc()
        .args(args)
        .args(["--seed", "7"])
        .env("QPC_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(flagged.stdout, both.stdout);
}

#[test]
fn garbage_seed_env_is_reported() {
    let out = qpc()
        .args(["escape"])
        .env("QPC_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("QPC_SEED"));
}

// ==== output formats and destinations ====

#[test]
fn csv_has_a_header_and_consistent_width() {
    let out = qpc()
        .args(["event", "--design", "present"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    let width = header.split(',').count();
    assert!(width >= 4);
    let mut rows = 0;
    for line in lines {
        assert_eq!(line.split(',').count(), width, "ragged row {line:?}");
        rows += 1;
    }
    assert_eq!(rows, 5, "expected one row per stage");
}

#[test]
fn json_output_parses() {
    let out = qpc()
        .args(["event", "--design", "improved", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    let rows = value.as_array().expect("top level should be an array");
    assert_eq!(rows.len(), 5);
    assert!(rows[0].get("stage").is_some());
}

#[test]
fn output_flag_writes_the_file_instead_of_stdout() {
    let path = std::env::temp_dir().join(format!("qpc-cli-{}.csv", std::process::id()));
    let out = qpc()
        .args(["escape", "--output"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty(), "table still printed to stdout");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("n_wirebonds"));
}

// ==== config plumbing ====

#[test]
fn config_overrides_change_the_numbers() {
    let path = std::env::temp_dir().join(format!("qpc-cfg-{}.txt", std::process::id()));
    std::fs::write(&path, "material.Al.tau0_ns = 500\n").unwrap();
    let args = ["rates", "--material", "Al", "--energies", "5"];
    let stock = qpc().args(args).output().unwrap();
    let tuned = qpc().args(args).args(["--config"]).arg(&path).output().unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(stock.status.code(), Some(0));
    assert_eq!(tuned.status.code(), Some(0));
    assert_ne!(stock.stdout, tuned.stdout, "override had no effect");
}

#[test]
fn inconsistent_override_fails_validation() {
    // Changing tc_k alone breaks the pinned gap/tc ratio; the material
    // check should catch it rather than run with a torn parameter set.
    let path = std::env::temp_dir().join(format!("qpc-torncfg-{}.txt", std::process::id()));
    std::fs::write(&path, "material.Al.tc_k = 2.4\n").unwrap();
    let out = qpc()
        .args(["rates", "--material", "Al", "--config"])
        .arg(&path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("gap_k"));
}

#[test]
fn broken_config_is_a_runtime_error() {
    let path = std::env::temp_dir().join(format!("qpc-badcfg-{}.txt", std::process::id()));
    std::fs::write(&path, "material.Al.tc_k 2.4\n").unwrap();
    let out = qpc()
        .args(["escape", "--config"])
        .arg(&path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
}
