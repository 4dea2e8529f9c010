//! End-to-end runs of the `cartanchan` binary: file layouts, JSON payloads,
//! exit codes, and output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cartanchan"));
    c.env_remove("CARTANCHAN_MAX_DIM");
    c
}

fn out_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir()
        .join("cartanchan-cli-tests")
        .join(format!("{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn run_ok(mut cmd: Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn read_json(path: &PathBuf) -> serde_json::Value {
    let body = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
    serde_json::from_str(&body).expect("valid JSON")
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

#[test]
fn basis_export_records_partition() {
    let dir = out_dir("basis");
    let mut cmd = bin();
    cmd.args(["basis", "--dims", "3", "--kind", "so", "--out"]).arg(&dir);
    run_ok(cmd);
    let b = read_json(&dir.join("basis_so_D3.json"));
    assert_eq!(b["schema"], "cartanchan/1");
    assert_eq!(b["a"], 3);
    assert_eq!(b["b"], 5);
    assert_eq!(b["a_indices"], serde_json::json!([1, 2, 3]));
    assert_eq!(b["labels"][0], "I");
    assert_eq!(b["matrices"].as_array().unwrap().len(), 9);
    assert_eq!(b["matrices"][0].as_array().unwrap().len(), 9);
}

#[test]
fn basis_export_d2_sp_has_empty_b_sector() {
    let dir = out_dir("basis-sp2");
    let mut cmd = bin();
    cmd.args(["basis", "--dims", "2", "--kind", "sp", "--out"]).arg(&dir);
    run_ok(cmd);
    let b = read_json(&dir.join("basis_sp_D2.json"));
    assert_eq!(b["b"], 0);
    assert_eq!(b["b_indices"].as_array().unwrap().len(), 0);
}

#[test]
fn odd_sp_dimension_is_rejected() {
    let dir = out_dir("basis-odd");
    let mut cmd = bin();
    cmd.args(["basis", "--dims", "7", "--kind", "sp", "--out"]).arg(&dir);
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("even"), "stderr: {stderr}");
}

#[test]
fn verify_liealg_passes_and_reports_identities() {
    let dir = out_dir("liealg");
    let mut cmd = bin();
    cmd.args(["verify-liealg", "--dims", "2,3,4", "--out"]).arg(&dir);
    run_ok(cmd);
    for name in ["liealg_so_D2.json", "liealg_so_D3.json", "liealg_sp_D4.json"] {
        let r = read_json(&dir.join(name));
        assert_eq!(r["pass"], true, "{name}");
        let ids = r["identities"].as_object().unwrap();
        assert!(ids.len() > 15, "{name} has {} identities", ids.len());
        for (iname, entry) in ids {
            let informational = entry["informational"].as_bool().unwrap();
            assert!(
                informational || entry["pass"].as_bool().unwrap(),
                "{name}: {iname} failed"
            );
        }
    }
    // D = 2 sp must flag vacuous degenerate-B identities.
    let r = read_json(&dir.join("liealg_sp_D2.json"));
    let vacuous = r["identities"]
        .as_object()
        .unwrap()
        .values()
        .filter(|e| e["vacuous"].as_bool().unwrap())
        .count();
    assert!(vacuous > 0);
}

#[test]
fn liealg_cap_is_enforced_and_overridable() {
    let dir = out_dir("cap");
    let mut cmd = bin();
    cmd.args(["verify-liealg", "--dims", "9", "--kind", "so", "--out"]).arg(&dir);
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains('8') && stderr.contains("CARTANCHAN_MAX_DIM"), "{stderr}");

    let mut cmd = bin();
    cmd.env("CARTANCHAN_MAX_DIM", "9");
    cmd.args(["verify-liealg", "--dims", "9", "--kind", "so", "--out"]).arg(&dir);
    run_ok(cmd);
    let r = read_json(&dir.join("liealg_so_D9.json"));
    assert_eq!(r["pass"], true);
}

#[test]
fn spectrum_payload_and_determinism() {
    let dir = out_dir("spectrum");
    let args = [
        "spectrum", "--dims", "4", "--kind", "sp", "--alpha", "0.1", "--beta", "0.05", "--out",
    ];
    let mut cmd = bin();
    cmd.args(args).arg(&dir);
    run_ok(cmd);
    let path = dir.join("spectrum_sp_D4.json");
    let first = std::fs::read(&path).unwrap();
    let s = read_json(&path);
    assert!(s["max_deviation"].as_f64().unwrap() < 1e-9);
    assert_eq!(s["is_cp"], true);
    assert_eq!(s["analytic"].as_array().unwrap().len(), 3);
    assert_eq!(s["numeric"].as_array().unwrap().len(), 16);
    assert!(s.get("matrix").is_none());

    // Identical configuration produces byte-identical output.
    let mut cmd = bin();
    cmd.args(args).arg(&dir);
    run_ok(cmd);
    assert_eq!(first, std::fs::read(&path).unwrap());
}

#[test]
fn choi_includes_matrix() {
    let dir = out_dir("choi");
    let mut cmd = bin();
    cmd.args([
        "choi", "--dims", "2", "--kind", "so", "--alpha", "0.5", "--beta", "0.25", "--out",
    ])
    .arg(&dir);
    run_ok(cmd);
    let c = read_json(&dir.join("choi_so_D2.json"));
    let rows = c["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    // Unit trace along the diagonal.
    let trace: f64 = (0..4).map(|i| rows[i][i][0].as_f64().unwrap()).sum();
    assert!((trace - 1.0).abs() < 1e-12);
}

#[test]
fn region_emits_vertices_with_header() {
    let dir = out_dir("region");
    let mut cmd = bin();
    cmd.args(["region", "--dims", "5", "--kind", "so", "--out"]).arg(&dir);
    run_ok(cmd);
    let csv = std::fs::read_to_string(dir.join("region_ppt_so_D5.csv")).unwrap();
    assert!(csv.starts_with("alpha,beta\n"));
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.contains(&fmt17(2.0 / 7.0)));

    let r = read_json(&dir.join("region_so_D5.json"));
    assert_eq!(r["ppt_vertices"].as_array().unwrap().len(), 4);
    assert_eq!(r["web_vertices"].as_array().unwrap().len(), 4);
    assert!(r["areas"]["cp"].as_f64().unwrap() > r["areas"]["ppt"].as_f64().unwrap());
}

#[test]
fn region_areas_shrink_with_dimension() {
    let dir = out_dir("region-shrink");
    let mut cmd = bin();
    cmd.args(["region", "--dims", "16,32", "--kind", "so", "--out"]).arg(&dir);
    run_ok(cmd);
    let a16 = read_json(&dir.join("region_so_D16.json"))["areas"]["ppt"]
        .as_f64()
        .unwrap();
    let a32 = read_json(&dir.join("region_so_D32.json"))["areas"]["ppt"]
        .as_f64()
        .unwrap();
    assert!(a32 < a16);
}

#[test]
fn ppt2_verdicts_hold_over_default_range() {
    let dir = out_dir("ppt2");
    let mut cmd = bin();
    cmd.args(["ppt2", "--out"]).arg(&dir);
    run_ok(cmd);
    let p = read_json(&dir.join("ppt2_so_D5.json"));
    assert_eq!(p["verdict"], true);
    assert_eq!(p["compositions"].as_array().unwrap().len(), 10);
    let p = read_json(&dir.join("ppt2_sp_D8.json"));
    assert_eq!(p["verdict"], true);
    let named = p["named"].as_array().unwrap();
    let h1 = named.iter().find(|n| n["name"] == "alpha_beta_1h").unwrap();
    assert!((h1["closed"][0].as_f64().unwrap() - 1.0 / 81.0).abs() < 1e-15);
}

#[test]
fn figures_contain_landmark_points() {
    let dir = out_dir("figures");
    let mut cmd = bin();
    cmd.args(["emit-figures", "--dims", "4", "--out"]).arg(&dir);
    run_ok(cmd);
    // The so D=4 PPT polygon has the vertex (1/3, 1/9).
    let fig1b = std::fs::read_to_string(dir.join("fig1b_ppt_so_D4.csv")).unwrap();
    assert!(
        fig1b.contains(&format!("{},{}", fmt17(1.0 / 3.0), fmt17(1.0 / 9.0))),
        "{fig1b}"
    );
    // The so D=5 composition cloud contains v¹∘h¹ = (0, 3/98).
    let fig3a = std::fs::read_to_string(dir.join("fig3a_so_D5_compositions.csv")).unwrap();
    assert_eq!(fig3a.lines().count(), 11);
    let found = fig3a.lines().skip(1).any(|line| {
        let mut cols = line.split(',');
        let a: f64 = cols.next().unwrap().parse().unwrap();
        let b: f64 = cols.next().unwrap().parse().unwrap();
        a.abs() < 1e-12 && (b - 3.0 / 98.0).abs() < 1e-12
    });
    assert!(found, "missing (0, 3/98) in {fig3a}");
}

#[test]
fn check_all_writes_report_and_honors_exit_contract() {
    let dir = out_dir("check-all");
    let mut cmd = bin();
    cmd.args(["check-all", "--dims", "2,3,4", "--out"]).arg(&dir);
    run_ok(cmd);
    let r = read_json(&dir.join("certification.json"));
    assert_eq!(r["overall"], true);
    assert_eq!(r["schema"], "cartanchan/1");
    for section in ["basis_audit", "lie", "channels", "regions", "ppt2"] {
        assert!(
            !r[section].as_array().unwrap().is_empty(),
            "section {section} missing"
        );
    }
    // PPT² certification spans its fixed range regardless of --dims.
    assert!(r["ppt2"].as_array().unwrap().len() >= 12 + 6);

    // An absurdly tight tolerance must fail loudly with exit code 1.
    let mut cmd = bin();
    cmd.args(["check-all", "--dims", "3", "--tol", "1e-18", "--out"]).arg(&dir);
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r = read_json(&dir.join("certification.json"));
    assert_eq!(r["overall"], false);
}
