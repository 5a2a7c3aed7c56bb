//! End-to-end runs of the `qgwb` binary.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qgwb"))
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qgwb-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn code(cmd: &mut Command) -> i32 {
    cmd.output().unwrap().status.code().unwrap()
}

fn read(dir: &Path, file: &str) -> String {
    std::fs::read_to_string(dir.join(file)).unwrap()
}

#[test]
fn axioms_scenario_passes_and_lists_residuals() {
    let dir = scratch("axioms");
    let sc = dir.join("s.json");
    std::fs::write(&sc, r#"{"name": "kp", "preset": "kac-paljutkin", "experiment": "axioms"}"#).unwrap();
    assert_eq!(code(bin().arg("run").arg(&sc).arg("--out").arg(&dir)), 0);
    let report: serde_json::Value = serde_json::from_str(&read(&dir, "kp.report.json")).unwrap();
    assert_eq!(report["passed"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() > 5);
    for c in checks {
        assert!(c["tolerance"].is_number() && c["pass"].is_boolean());
    }
    assert!(read(&dir, "kp.report.csv").starts_with("section,name,value,relation,target,tolerance,pass\n"));
    let meta: serde_json::Value = serde_json::from_str(&read(&dir, "kp.meta.json")).unwrap();
    assert!(meta["elapsed_ms"].is_number());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = scratch("rerun");
    let run = |sub: &str| {
        let out = dir.join(sub);
        let status = code(
            bin()
                .args([
                    "--preset",
                    "free(2)",
                    "--experiment",
                    "lemma74",
                    "--param",
                    "t=1.0",
                    "--param",
                    "radius=6",
                    "--name",
                    "l74",
                    "--out",
                ])
                .arg(&out),
        );
        assert_eq!(status, 0);
        (read(&out, "l74.report.json"), read(&out, "l74.report.csv"))
    };
    let a = run("a");
    let b = run("b");
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_str(&a.0).unwrap();
    let bounds: Vec<f64> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"] == "bound")
        .map(|c| c["value"].as_f64().unwrap())
        .collect();
    assert_eq!(bounds.len(), 3);
    assert!(bounds.windows(2).all(|p| p[1] > p[0]));
}

#[test]
fn unknown_experiment_is_a_schema_error_without_output() {
    let dir = scratch("unknown");
    assert_eq!(code(bin().args(["--experiment", "nope", "--name", "x", "--out"]).arg(&dir)), 2);
    assert!(!dir.join("x.report.json").exists());
    assert_eq!(code(bin().args(["--experiment", "axioms", "--param", "bogus=1", "--out"]).arg(&dir)), 2);
    let sc = dir.join("bad.json");
    std::fs::write(&sc, r#"{"name": "b", "experiment": "axioms", "extra": 1}"#).unwrap();
    assert_eq!(code(bin().arg("run").arg(&sc).arg("--out").arg(&dir)), 2);
}

#[test]
fn exit_codes_for_axioms_contracts_and_caps() {
    let dir = scratch("codes");
    // A document whose counit is not multiplicative.
    let doc = dir.join("broken.json");
    std::fs::write(
        &doc,
        r#"{
            "dim": 2, "basis": ["e", "g"],
            "mult": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]],
            "unit": [1, 0],
            "comult": [[0,0,0,1],[1,1,1,1]],
            "counit": [1, 2],
            "star": [[1,0],[0,1]],
            "antipode": [[1,0],[0,1]],
            "irreps": [{"dim":1,"matrix":[[[1,0]]]},{"dim":1,"matrix":[[[0,1]]]}]
        }"#,
    )
    .unwrap();
    assert_eq!(
        code(bin().arg("--document").arg(&doc).args(["--experiment", "axioms", "--name", "doc", "--out"]).arg(&dir)),
        3
    );
    assert!(dir.join("doc.report.json").exists());
    // Tolerances scaled to zero-ish make residual checks fail: contract failure, report written.
    assert_eq!(
        code(bin().args(["--experiment", "semigroup", "--tol-scale", "1e-12", "--name", "tight", "--out"]).arg(&dir)),
        4
    );
    let report: serde_json::Value = serde_json::from_str(&read(&dir, "tight.report.json")).unwrap();
    assert_eq!(report["passed"], false);
    // A window larger than the cap.
    assert_eq!(
        code(
            bin()
                .args([
                    "--experiment",
                    "theorem69",
                    "--param",
                    "radius=100000",
                    "--param",
                    "cap=1000",
                    "--name",
                    "cap",
                    "--out"
                ])
                .arg(&dir)
        ),
        5
    );
}

#[test]
fn batch_runs_concurrently_and_reports_the_worst_code() {
    let dir = scratch("batch");
    let sc = dir.join("batch.json");
    std::fs::write(
        &sc,
        r#"[
            {"name": "a", "preset": "dual-Z(8)", "experiment": "kazhdan"},
            {"name": "b", "experiment": "dense_image"},
            {"name": "c", "preset": "fun-S3", "experiment": "semigroup", "tol_scale": 1e-12}
        ]"#,
    )
    .unwrap();
    assert_eq!(code(bin().arg("run").arg(&sc).arg("--out").arg(&dir)), 4);
    for n in ["a", "b", "c"] {
        assert!(dir.join(format!("{n}.report.json")).exists());
    }
}

#[test]
fn list_presets_is_sorted_and_includes_documents() {
    let dir = scratch("list");
    let out = bin().arg("list-presets").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let kp = text.lines().find(|l| l.starts_with("kac-paljutkin ")).unwrap();
    assert!(kp.split_whitespace().eq(["kac-paljutkin", "finite", "8", "true", "2"]));
    let z4 = text.lines().find(|l| l.starts_with("dual-Z(4) ")).unwrap();
    assert_eq!(z4.split_whitespace().last(), Some("1"));
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert!(names.windows(2).all(|p| p[0] <= p[1]));
    assert_eq!(text, String::from_utf8(bin().arg("list-presets").output().unwrap().stdout).unwrap());

    let q = qg_core::presets::dual_z(3).unwrap();
    std::fs::write(dir.join("my-z3.json"), qg_core::doc::to_json(&q)).unwrap();
    let out = bin().arg("list-presets").env("QGWB_PRESET_DIR", &dir).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().eq(["my-z3", "document", "3", "true", "1"])));
    let status = code(
        bin().args(["--preset", "my-z3", "--experiment", "kazhdan", "--out"]).arg(&dir).env("QGWB_PRESET_DIR", &dir),
    );
    assert_eq!(status, 0);
}
