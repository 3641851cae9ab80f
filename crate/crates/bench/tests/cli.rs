use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rwca_bench::topologies::EXAMPLE_JSON;

fn rwca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rwca"))
        .args(args)
        .env_remove("RWCA_TIME_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_example_instance(dir: &Path) -> String {
    let json = format!(
        r#"{{"topology":{EXAMPLE_JSON},"demands":[{{"id":0,"src":"A","dst":"C"}},{{"id":1,"src":"B","dst":"C"}}]}}"#
    );
    let path = dir.join("instance.json");
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let instance = write_example_instance(dir.path());
    for (mode, cost, wavelengths) in [("bypass", 4, 2), ("rwca", 3, 1)] {
        let out = rwca(&["solve", "--instance", &instance, "--mode", mode]);
        assert!(out.status.success(), "{}", stderr(&out));
        let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(json["status"], "Optimal");
        assert_eq!(json["metrics"]["wavelength_links"], cost);
        assert_eq!(json["metrics"]["distinct_wavelengths"], wavelengths);

        let sol = dir.path().join(format!("{mode}.json"));
        fs::write(&sol, stdout(&out)).unwrap();
        let v = rwca(&[
            "verify",
            "--instance",
            &instance,
            "--solution",
            sol.to_str().unwrap(),
        ]);
        assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
        assert!(stdout(&v).contains(&format!("{cost} wavelength-links")));
    }
}

#[test]
fn heuristic_method_is_verified_too() {
    let dir = tempfile::tempdir().unwrap();
    let instance = write_example_instance(dir.path());
    let out = rwca(&[
        "solve",
        "--instance",
        &instance,
        "--mode",
        "rwca",
        "--method",
        "heuristic",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["metrics"]["wavelength_links"], 3);
}

#[test]
fn clashing_solution_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let instance = write_example_instance(dir.path());
    let sol = dir.path().join("bad.json");
    fs::write(
        &sol,
        r#"{"provisions":[
            {"type":"alone","demand":0,"path":["A","X","C"],"wavelength":0},
            {"type":"alone","demand":1,"path":["B","X","C"],"wavelength":0}]}"#,
    )
    .unwrap();
    let v = rwca(&[
        "verify",
        "--instance",
        &instance,
        "--solution",
        sol.to_str().unwrap(),
    ]);
    assert_eq!(v.status.code(), Some(1));
    let err = stderr(&v);
    assert!(
        err.contains("WavelengthClash") && err.contains("X-C"),
        "{err}"
    );
}

#[test]
fn exit_codes() {
    let missing = rwca(&[
        "verify",
        "--instance",
        "/nonexistent/i.json",
        "--solution",
        "/nonexistent/s.json",
    ]);
    assert_eq!(missing.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    let g = rwca(&[
        "solve",
        "--instance",
        garbage.to_str().unwrap(),
        "--mode",
        "rwca",
    ]);
    assert_eq!(g.status.code(), Some(1));

    assert_eq!(rwca(&["bench", "--samples", "0"]).status.code(), Some(1));
    assert_eq!(rwca(&["bench", "--solver", "ilp"]).status.code(), Some(1));
    assert_eq!(
        rwca(&["bench", "--wavelengths", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(rwca(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rwca(&["--help"]).status.code(), Some(0));

    let out = dir.path().join("report");
    let zero_budget = Command::new(env!("CARGO_BIN_EXE_rwca"))
        .args([
            "bench",
            "--topology",
            "example",
            "--samples",
            "1",
            "--out",
            out.to_str().unwrap(),
        ])
        .env("RWCA_TIME_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(zero_budget.status.code(), Some(1));
}

#[test]
fn gen_is_deterministic() {
    let a = rwca(&["gen", "--topology", "nsfnet", "--seed", "42"]);
    let b = rwca(&["gen", "--topology", "nsfnet", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let demands: Vec<serde_json::Value> = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(demands.len(), 26);

    let small = rwca(&["gen", "--topology", "example", "--seed", "0"]);
    let demands: Vec<serde_json::Value> = serde_json::from_str(&stdout(&small)).unwrap();
    assert_eq!(demands.len(), 6);
}

#[test]
fn gen_accepts_topology_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.json");
    fs::write(
        &path,
        r#"{"name":"ring","nodes":["a","b","c","d","e"],"links":[["a","b"],["b","c"],["c","d"],["d","e"],["e","a"]]}"#,
    )
    .unwrap();
    let out = rwca(&["gen", "--topology", path.to_str().unwrap(), "--seed", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let demands: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(demands.len(), 8);
}

#[test]
fn bench_with_pinned_demands() {
    let dir = tempfile::tempdir().unwrap();
    let demands = dir.path().join("demands.json");
    fs::write(
        &demands,
        r#"[{"id":0,"src":"A","dst":"C"},{"id":1,"src":"B","dst":"C"}]"#,
    )
    .unwrap();
    let out = dir.path().join("report");
    let r = rwca(&[
        "bench",
        "--topology",
        "example",
        "--solver",
        "exact",
        "--demands",
        demands.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--quiet",
    ]);
    assert!(r.status.success(), "{}", stderr(&r));
    let csv = fs::read_to_string(out.join("report.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3, "header, one record, summary");
    assert!(
        lines[1].contains(",Optimal,4,2,4,Optimal,3,1,3,1,25.0000,25.0000,"),
        "{}",
        lines[1]
    );
    assert!(lines[2].starts_with("summary,"));
    assert!(out.join("gains.svg").exists() && out.join("report.json").exists());
}

#[test]
fn formats_flag_limits_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r");
    let r = rwca(&[
        "bench",
        "--topology",
        "example",
        "--samples",
        "2",
        "--formats",
        "json",
        "--out",
        out.to_str().unwrap(),
        "--quiet",
    ]);
    assert!(r.status.success(), "{}", stderr(&r));
    assert!(out.join("report.json").exists());
    assert!(!out.join("report.csv").exists());
}
