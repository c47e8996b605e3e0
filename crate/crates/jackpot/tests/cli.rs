//! End-to-end checks of the `jackpot` binary: output schemas, exit codes,
//! manifests, format switching, and reproducibility of seeded runs.

use std::path::Path;
use std::process::{Command, Output};

use jackpot::closed_forms::uniform_return;
use jackpot::simulate::SimulationResult;
use serde_json::Value;

fn jackpot_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jackpot"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = jackpot_cmd(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout_text(args: &[&str]) -> String {
    let out = jackpot_cmd(args);
    assert!(out.status.success(), "command {args:?} failed");
    String::from_utf8(out.stdout).expect("stdout is utf-8")
}

#[test]
fn evaluate_exact_reports_the_known_small_case() {
    let v = stdout_json(&["evaluate", "--t", "2", "--c", "2", "--s", "2"]);
    assert_eq!(v["jackpot"], 4.0);
    assert!((v["expected_win"].as_f64().unwrap() - 7.0 / 3.0).abs() < 1e-9);
    assert!((v["expected_return"].as_f64().unwrap() - 1.0 / 6.0).abs() < 1e-9);
    assert_eq!(v["method"], "exact");
    // The enumerate route agrees through the same interface.
    let w = stdout_json(&["evaluate", "--t", "2", "--c", "2", "--s", "2", "--method", "enumerate"]);
    assert_eq!(v["expected_win"], w["expected_win"]);
    assert_eq!(w["method"], "enumerated");
}

#[test]
fn breakeven_json_carries_the_documented_discrepancy_note() {
    let v = stdout_json(&["breakeven", "--t", "1000", "--c", "1000"]);
    assert_eq!(v["first_profitable_integer"], 583);
    assert!((v["g_min"].as_f64().unwrap() + 53.5545).abs() < 0.05);
    let s_star = v["s_star"].as_f64().unwrap();
    assert!((290.5..=291.5).contains(&s_star));
    let notes = v["notes"].as_str().unwrap();
    assert!(notes.contains("290.798") && notes.contains("291.089"));
}

#[test]
fn table1_csv_has_the_mandated_schema() {
    let text = stdout_text(&["table1", "--t", "1000", "--c", "1000", "--format", "csv"]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,prob,payoff_s_t,contrib_s_t,payoff_s_1,contrib_s_1"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5, "k = 0..kmax with default kmax = 4");
    let first: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(first[0], "0");
    assert!((first[1].parse::<f64>().unwrap() - 0.3678794412).abs() < 1e-9);
    assert!((first[2].parse::<f64>().unwrap() - 2000.0).abs() < 1e-6);
}

#[test]
fn sweep_csv_round_trips_through_the_library() {
    let text = stdout_text(&[
        "sweep", "--t", "1000", "--c", "1000", "--s-range", "100:1000:100", "--format", "csv",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "var,gain,return");
    let mut rows = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let s: u64 = cells[0].parse().unwrap();
        let gain: f64 = cells[1].parse().unwrap();
        let ret: f64 = cells[2].parse().unwrap();
        let truth = uniform_return(1000, 1000, s).unwrap();
        assert!(
            (ret - truth).abs() <= 1e-9 * truth.abs().max(1.0),
            "return at s = {s} does not round-trip: {ret} vs {truth}"
        );
        assert!((gain - truth * s as f64).abs() <= 1e-9 * (truth * s as f64).abs().max(1.0));
        rows += 1;
    }
    assert_eq!(rows, 10);
}

#[test]
fn simulate_json_is_the_simulation_result_schema_and_reruns_identically() {
    let args = ["simulate", "--t", "4", "--c", "6", "--s", "2", "--trials", "20000", "--seed", "11"];
    let first = jackpot_cmd(&args);
    assert!(first.status.success());
    let again = jackpot_cmd(&args);
    assert_eq!(first.stdout, again.stdout, "seeded reruns must be bit-identical");
    // The JSON parses directly into the library's result type — field for field.
    let parsed: SimulationResult = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(parsed.n_trials, 20_000);
    assert_eq!(parsed.seed, 11);
    assert!(parsed.std_error > 0.0);
}

#[test]
fn simulate_without_seed_reports_the_one_it_generated() {
    let v = stdout_json(&["simulate", "--t", "3", "--c", "3", "--s", "1", "--trials", "1000"]);
    assert!(v["seed"].as_u64().is_some());
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    // Unknown flag: clap's own usage error.
    let out = jackpot_cmd(&["evaluate", "--t", "2", "--c", "2", "--s", "2", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // Domain error: a take above 100%.
    let out = jackpot_cmd(&["evaluate", "--t", "2", "--c", "2", "--s", "2", "--x", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x"));
    // Vector length mismatch names the flag it came from.
    let out = jackpot_cmd(&["evaluate", "--t", "3", "--c", "2", "--s", "1", "--q", "0.5,0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q"));
}

#[test]
fn infeasible_sizes_exit_3() {
    let out = jackpot_cmd(&[
        "evaluate", "--t", "10", "--c", "10", "--s", "5", "--method", "enumerate",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));

    // The exact route must reach its own guard too: a million-ticket uniform
    // config is valid, just too big.
    let out = jackpot_cmd(&[
        "evaluate", "--t", "1000000", "--c", "1000000", "--s", "1000000", "--method", "exact",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));
}

#[test]
fn out_flag_writes_payload_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let out = jackpot_cmd(&[
        "simulate", "--t", "3", "--c", "4", "--s", "1.5", "--r", "uniform", "--trials", "5000",
        "--seed", "21", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "file mode writes nothing to stdout");
    let payload: SimulationResult =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(payload.seed, 21);
    let manifest_path = dir.path().join("run.json.manifest.json");
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(&manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["command"], "simulate");
    assert_eq!(manifest["seed"], 21);
    assert_eq!(manifest["parameters"]["trials"], 5000);
    assert_eq!(
        manifest["parameters"]["q"].as_array().unwrap().len(),
        3,
        "manifest records the resolved vector, not the spec string"
    );
    assert!(manifest["version"].as_str().is_some());
    assert!(manifest["timestamp_unix"].as_u64().unwrap() > 0);
}

#[test]
fn equilibrium_ops_emit_their_reports() {
    let v = stdout_json(&["equilibrium", "minimize-crowd", "--t", "5", "--c", "3", "--s", "5"]);
    assert_eq!(v["converged"], true);
    let weights = v["argmin_vector"].as_array().unwrap();
    assert_eq!(weights.len(), 5);
    for w in weights {
        assert!((w.as_f64().unwrap() - 0.2).abs() < 1e-8);
    }
    let v = stdout_json(&[
        "equilibrium", "best-response", "--p", "0.7,0.3", "--u", "1", "--side", "crowd",
    ]);
    assert_eq!(v["converged"], true);
    let v = stdout_json(&[
        "equilibrium", "winning-condition", "--a", "300", "--x", "0.1", "--s", "1000", "--c", "1000",
    ]);
    assert_eq!(v["holds"], true);
    assert!((v["bound"].as_f64().unwrap() - 50.0).abs() < 1e-9);
    let text = stdout_text(&[
        "equilibrium", "convexity", "--q", "0.5", "--c", "2", "--format", "csv",
    ]);
    assert!(text.starts_with("value,first_difference,second_difference,h"));
    assert!(text.contains("1.75"));
}

#[test]
fn groups_csv_schema() {
    let text = stdout_text(&[
        "groups", "--t", "1000", "--s", "1000", "--g", "100", "--l", "10", "--format", "csv",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "adjusted_win,ratio_to_ungrouped");
    let cells: Vec<&str> = lines.next().unwrap().split(',').collect();
    let ratio: f64 = cells[1].parse().unwrap();
    assert!((ratio - 0.9962487692).abs() < 1e-8);
}

#[test]
fn vector_files_feed_every_distribution_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    std::fs::write(&path, "0.6\n0.4\n").unwrap();
    let spec = format!("@{}", path.display());
    let v = stdout_json(&[
        "evaluate", "--t", "2", "--c", "3", "--s", "1", "--p", &spec, "--q", &spec, "--r", &spec,
    ]);
    assert_eq!(v["method"], "exact");
    // A wrong-length file names the flag and line discipline is enforced.
    let out = jackpot_cmd(&["evaluate", "--t", "3", "--c", "3", "--s", "1", "--p", &spec]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p"));
}

#[test]
fn format_flag_is_global_and_positional_anywhere() {
    let a = stdout_text(&["--format", "csv", "breakeven", "--t", "1000", "--c", "1000"]);
    let b = stdout_text(&["breakeven", "--t", "1000", "--c", "1000", "--format", "csv"]);
    assert_eq!(a, b);
    assert!(a.starts_with("y,s_star,g_min,s_zero,first_profitable_integer"));
}

#[test]
fn closed_form_route_matches_exact_route_through_the_binary() {
    let exact = stdout_json(&["evaluate", "--t", "1000", "--c", "1000", "--s", "1000"]);
    let closed = stdout_json(&[
        "evaluate", "--t", "1000", "--c", "1000", "--s", "1000", "--method", "closed-form",
    ]);
    let a = exact["expected_return"].as_f64().unwrap();
    let b = closed["expected_return"].as_f64().unwrap();
    assert!((a - b).abs() < 1e-8, "routes disagree: {a} vs {b}");
    assert!((b - 0.2640804608).abs() < 1e-9);
}

#[test]
fn manifest_survives_csv_format_too() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = jackpot_cmd(&[
        "table1", "--t", "1000", "--c", "1000", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("k,prob,"));
    assert!(Path::new(&format!("{}.manifest.json", path.display())).exists());
}
