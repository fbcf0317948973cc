use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_liebasis");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("LIEBASIS_CACHE_DIR")
        .output()
        .unwrap()
}

fn run_with_env(args: &[&str], cache: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .env("LIEBASIS_CACHE_DIR", cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SU3_COUPLED: &[&str] = &["verify", "--n", "3", "--rep1", "adjoint", "--rep2", "adjoint", "--basis", "coupled"];

#[test]
fn counts_json() {
    let o = run(&["counts", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_match"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let n = row["n"].as_u64().unwrap();
        // full Casimirs, subgroup Casimirs and weights of one irrep
        let single = (n - 1) * (n + 2) / 2;
        assert_eq!(row["single_ir"], single);
        assert_eq!(row["product"], 2 * single);
        assert_eq!(row["coupled"], single + 2 * (n - 1));
        assert_eq!(row["difference"], (n - 1) * (n - 2) / 2);
        assert_eq!(row["enumerated"]["coupled"], row["coupled"]);
        assert_eq!(row["match"], true);
    }
}

#[test]
fn invalid_configurations_exit_3() {
    let cases: &[&[&str]] = &[
        &["verify", "--n", "1", "--rep1", "defining", "--rep2", "defining", "--basis", "coupled"],
        &["verify", "--n", "3", "--rep1", "defining", "--rep2", "adjoint", "--basis", "coupled", "--with-exchange"],
        &["verify", "--n", "3", "--rep1", "defining", "--rep2", "defining", "--basis", "coupled", "--tol", "-1"],
        &["counts", "--n-max", "1"],
        &["verify", "--n", "3", "--rep1", "bogus", "--rep2", "defining", "--basis", "coupled"],
        &["decompose"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_json_round_trips_byte_identical() {
    let o = run(SU3_COUPLED);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "incomplete");
    assert_eq!(v["blocks"]["max_dim"], 2);
    assert_eq!(v["meta"]["dim"], 64);
    let mut again = serde_json::to_string_pretty(&v).unwrap();
    again.push('\n');
    assert_eq!(again, text);
}

#[test]
fn repeated_runs_identical() {
    let a = run(SU3_COUPLED);
    let b = run(SU3_COUPLED);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["decompose", "--n", "3", "--rep1", "adjoint", "--rep2", "adjoint"]);
    let b = run(&["decompose", "--n", "3", "--rep1", "adjoint", "--rep2", "adjoint"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn warm_cache_matches_cold() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let mut args = SU3_COUPLED.to_vec();
    args.extend(["--cache-dir", cache]);
    let cold = run(&args);
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(files > 0);
    let warm = run(&args);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, run(SU3_COUPLED).stdout);
}

#[test]
fn env_cache_dir_used_and_flag_overrides() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--n", "2", "--rep1", "defining", "--rep2", "defining", "--basis", "product"];
    assert_eq!(run_with_env(&args, env_dir.path()).status.code(), Some(0));
    assert!(std::fs::read_dir(env_dir.path()).unwrap().count() > 0);

    let env_dir2 = tempfile::tempdir().unwrap();
    let mut with_flag = args.to_vec();
    with_flag.extend(["--cache-dir", flag_dir.path().to_str().unwrap()]);
    assert_eq!(run_with_env(&with_flag, env_dir2.path()).status.code(), Some(0));
    assert_eq!(std::fs::read_dir(env_dir2.path()).unwrap().count(), 0);
    assert!(std::fs::read_dir(flag_dir.path()).unwrap().count() > 0);
}

#[test]
fn corrupt_cache_entry_is_an_error_not_a_silent_recompute() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "verify", "--n", "2", "--rep1", "defining", "--rep2", "defining", "--basis", "coupled", "--cache-dir",
        dir.path().to_str().unwrap(),
    ];
    assert_eq!(run(&args).status.code(), Some(0));
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), b"garbage").unwrap();
    }
    let o = run(&args);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache file"));
}

#[test]
fn markdown_output() {
    let o = run(&["verify", "--n", "2", "--rep1", "defining", "--rep2", "defining", "--basis", "coupled", "--format", "markdown"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# verify"));
    assert!(text.contains("**Verdict:** complete"));
    assert!(text.contains("J2(1), J2(2), J2, Jz"));
    let o = run(&["counts", "--n-max", "4", "--format", "markdown"]);
    assert!(stdout(&o).contains('|'));
}

#[test]
fn exchange_completes_su3_adjoint_square() {
    let mut args = SU3_COUPLED.to_vec();
    args.push("--with-exchange");
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "complete");
    assert_eq!(v["blocks"]["count"], 64);
    assert_eq!(v["counts"]["expected"], v["counts"]["actual"]);
}
