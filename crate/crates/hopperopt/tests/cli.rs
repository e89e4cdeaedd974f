//! End-to-end checks of the `hopperopt` binary: flag handling, exit codes,
//! output schemas and byte-for-byte reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopperopt"))
}

fn workspace_file(relative: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join(relative)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

#[test]
fn optimize_writes_a_reproducible_run_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let out_a = tmp.path().join("a");
    let out_b = tmp.path().join("b");
    let mission = workspace_file("missions/mare_surface.json");
    let inventory = workspace_file("data/inventory.csv");

    for out in [&out_a, &out_b] {
        let output = run(&[
            "optimize",
            "--mission",
            &mission,
            "--inventory",
            &inventory,
            "--out",
            &out.display().to_string(),
            "--seed",
            "11",
            "--population",
            "24",
            "--generations",
            "12",
        ]);
        assert!(
            output.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&output.stderr)
        );
    }

    // identical seeds give byte-identical CSVs; the manifest may differ in
    // wall time only
    let front_a = std::fs::read(out_a.join("pareto_front.csv")).unwrap();
    let front_b = std::fs::read(out_b.join("pareto_front.csv")).unwrap();
    assert_eq!(front_a, front_b);
    let sel_a = std::fs::read(out_a.join("selection_history.csv")).unwrap();
    let sel_b = std::fs::read(out_b.join("selection_history.csv")).unwrap();
    assert_eq!(sel_a, sel_b);

    // exactly one manifest describing the run
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_a.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["schema_version"], 1);
    assert_eq!(manifest["seed"], 11);
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 3);

    // the front csv carries the documented header
    let text = String::from_utf8(front_a).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("mass_kg,radius_m,power_w,ms_id"));
    assert!(header.ends_with("payload_mass_kg,payload_volume_m3,payload_power_w"));
    // every front row reports zero violation on this scenario
    for line in text.lines().skip(1) {
        let omega: f64 = line.split(',').nth(16).unwrap().parse().unwrap();
        assert_eq!(omega, 0.0);
    }
}

#[test]
fn optimize_rejects_bad_configuration_with_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let inventory = workspace_file("data/inventory.csv");

    // missing inventory flag (and no env var): usage error from the parser
    let output = binary()
        .env_remove("HOPPEROPT_INVENTORY")
        .args([
            "optimize",
            "--mission",
            &workspace_file("missions/mare_surface.json"),
            "--out",
            "/tmp/never",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("--inventory"));

    // bad weights flag names the field
    let output = run(&[
        "optimize",
        "--mission",
        &workspace_file("missions/mare_surface.json"),
        "--inventory",
        &inventory,
        "--out",
        &tmp.path().join("x").display().to_string(),
        "--weights",
        "0.9,0.2,0.5,0.5",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("weights"));

    // unparsable mission file
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, "{\"phases\": []").unwrap();
    let output = run(&[
        "optimize",
        "--mission",
        &bad.display().to_string(),
        "--inventory",
        &inventory,
        "--out",
        &tmp.path().join("y").display().to_string(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn compare_grid_has_full_cardinality_and_infeasible_format() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("grid");
    let output = run(&[
        "compare",
        "--grid",
        "100,4000x0.5,20",
        "--inventory",
        &workspace_file("data/inventory.csv"),
        "--out",
        &out.display().to_string(),
    ]);
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let text = std::fs::read_to_string(out.join("compare.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    // header + 2 distances x 2 durations x 6 combos
    assert_eq!(lines.len(), 1 + 24);
    assert_eq!(
        lines[0],
        "distance_m,duration_hr,propellant,power_type,total_mass_kg,radius_m"
    );
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6);
        if fields[4] == "INFEASIBLE" {
            assert!(fields[5].is_empty(), "infeasible cells carry no numbers");
        } else {
            fields[4].parse::<f64>().expect("mass parses");
        }
    }
}

#[test]
fn validate_exit_codes_follow_the_contract() {
    let output = run(&["validate", "--suite", "sqp"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.lines().filter(|l| l.starts_with("PASS")).count() >= 3);

    let output = run(&["validate", "--suite", "sorting"]);
    assert_eq!(output.status.code(), Some(0));

    let output = run(&["validate", "--suite", "warp-drive"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown suite"));
}

#[test]
fn inventory_env_var_provides_the_default_path() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("env-run");
    let output = binary()
        .env("HOPPEROPT_INVENTORY", workspace_file("data/inventory.csv"))
        .args([
            "optimize",
            "--mission",
            &workspace_file("missions/mare_surface.json"),
            "--out",
            &out.display().to_string(),
            "--seed",
            "3",
            "--population",
            "16",
            "--generations",
            "5",
        ])
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    assert!(out.join("pareto_front.csv").exists());
}

#[test]
fn broken_inventory_is_a_config_error_naming_the_row() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("inv.csv");
    let mut text = std::fs::read_to_string(workspace_file("data/inventory.csv")).unwrap();
    text.push_str("battery,3,duplicate,0.1,1e-4,0,,,10,,,\n");
    std::fs::write(&bad, text).unwrap();
    let output = run(&[
        "optimize",
        "--mission",
        &workspace_file("missions/mare_surface.json"),
        "--inventory",
        &bad.display().to_string(),
        "--out",
        &tmp.path().join("z").display().to_string(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("duplicate id 3"), "stderr: {stderr}");
}
