use std::fs;
use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn dsopforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsopforge"))
        .args(args)
        .env_remove("DSOPFORGE_MINIMIZER")
        .output()
        .unwrap()
}

fn stats(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stderr).unwrap_or_else(|e| {
        panic!("stats not JSON ({e}): {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn script(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
    fs::set_permissions(&path, fs::Permissions::from_mode(0o755)).unwrap();
    path
}

#[test]
fn dsop_four_cubes_variant_one() {
    let four_cubes = data("four_cubes.pla");
    let out = dsopforge(&["dsop", four_cubes.to_str().unwrap(), "--variant", "1", "--sort", "dw", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let pla = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(pla.contains(".p 4\n"), "{pla}");
    let s = stats(&out);
    assert_eq!(s["dsop_size"], 4);
    assert_eq!(s["verified"], true);
    assert_eq!(s["sop_mode"], "per-output");
}

#[test]
fn dsop_chain_default_variant() {
    let out = dsopforge(&["dsop", data("chain2.pla").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let s = stats(&out);
    assert_eq!(s["dsop_size"], 3);
    assert_eq!(s["variant"], 3);
    assert_eq!(s["verified"], false);
}

#[test]
fn output_and_stats_files() {
    let dir = tempfile::tempdir().unwrap();
    let (pla, json) = (dir.path().join("out.pla"), dir.path().join("stats.json"));
    let out = dsopforge(&[
        "dsop",
        data("chain3.pla").to_str().unwrap(),
        "-o",
        pla.to_str().unwrap(),
        "--stats",
        json.to_str().unwrap(),
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let s: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(s["dsop_size"], 7);
    let text = fs::read_to_string(pla).unwrap();
    let back = dsopforge::parse_pla(&text).unwrap();
    assert_eq!(back.rows.len(), 7);
}

#[test]
fn parse_error_exits_two() {
    let out = dsopforge(&["dsop", data("broken.pla").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.pla"));
    let missing = dsopforge(&["dsop", "/nonexistent/x.pla"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn pdsop_two_files() {
    let out = dsopforge(&[
        "pdsop",
        data("mixed_d.pla").to_str().unwrap(),
        data("mixed_s.pla").to_str().unwrap(),
        "--variant",
        "1",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = stats(&out);
    assert_eq!(s["dsop_size"], 4);
    assert_eq!(s["verified"], true);
}

#[test]
fn pdsop_overlap_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.pla");
    fs::write(&d, ".i 4\n.o 1\n01-- 1\n.e\n").unwrap();
    let out = dsopforge(&["pdsop", d.to_str().unwrap(), data("mixed_s.pla").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pdsop_dc_policies() {
    let f = data("with_dc.pla");
    for policy in ["once", "many"] {
        let out = dsopforge(&["pdsop", f.to_str().unwrap(), "--dc-policy", policy, "--verify"]);
        assert_eq!(out.status.code(), Some(0), "{policy}");
        assert_eq!(stats(&out)["dsop_size"], 1);
    }
}

#[test]
fn bench_grid_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["four_cubes.pla", "chain3.pla"] {
        fs::copy(data(name), dir.path().join(name)).unwrap();
    }
    let csv = |jobs: &str| {
        let path = dir.path().join(format!("rows{jobs}.csv"));
        let out = dsopforge(&["bench", dir.path().to_str().unwrap(), "--jobs", jobs, "--csv", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let text = fs::read_to_string(path).unwrap();
        // drop the elapsed_ms column
        text.lines()
            .map(|l| {
                let mut cells: Vec<&str> = l.split(',').collect();
                cells.remove(10);
                cells.join(",")
            })
            .collect::<Vec<_>>()
    };
    let one = csv("1");
    assert_eq!(one.len(), 1 + 2 * 5 * 2);
    assert_eq!(
        one[0],
        "benchmark,inputs,outputs,sop_size,dsop_size,variant,sort,drop_dc_only,backend,sop_mode,verified"
    );
    assert!(one[1].starts_with("chain3,6,1,3,7,1,dw,"));
    assert_eq!(one, csv("3"));
}

#[test]
fn bench_records_failures_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(data("four_cubes.pla"), dir.path().join("a.pla")).unwrap();
    fs::copy(data("broken.pla"), dir.path().join("b.pla")).unwrap();
    let json = dir.path().join("report.json");
    let out = dsopforge(&["bench", dir.path().to_str().unwrap(), "--variants", "3", "--sorts", "dw", "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 1);
    assert_eq!(report["failures"][0]["benchmark"], "b");
}

#[test]
fn failing_minimizer_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = script(dir.path(), "bad.sh", "exit 1");
    let four_cubes = data("four_cubes.pla");
    let flag = format!("external:{}", bad.display());
    let out = dsopforge(&["dsop", four_cubes.to_str().unwrap(), "--minimizer", &flag]);
    assert_eq!(out.status.code(), Some(3));

    let via_env = Command::new(env!("CARGO_BIN_EXE_dsopforge"))
        .args(["dsop", four_cubes.to_str().unwrap()])
        .env("DSOPFORGE_MINIMIZER", &bad)
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(3));

    let good = script(dir.path(), "cat.sh", "cat \"$1\"");
    let ok = Command::new(env!("CARGO_BIN_EXE_dsopforge"))
        .args(["dsop", four_cubes.to_str().unwrap(), "--verify"])
        .env("DSOPFORGE_MINIMIZER", &good)
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stats(&ok)["backend"], "external");
}

#[test]
fn bad_flags_are_rejected() {
    let four_cubes = data("four_cubes.pla");
    assert_eq!(dsopforge(&["dsop", four_cubes.to_str().unwrap(), "--variant", "6"]).status.code(), Some(2));
    assert_eq!(dsopforge(&["dsop", four_cubes.to_str().unwrap(), "--sort", "xy"]).status.code(), Some(2));
}
