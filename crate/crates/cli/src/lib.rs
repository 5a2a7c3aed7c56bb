//! Batch scenario runner: loads presets or documents, runs named experiment
//! suites and writes machine-readable reports.

pub mod error;
pub mod experiments;
pub mod report;
pub mod scenario;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

pub use error::{RunError, EXIT_AXIOM, EXIT_CAP, EXIT_CONTRACT, EXIT_OK, EXIT_SCHEMA};
pub use report::{Check, Checks, Meta, Relation, Report};
pub use scenario::{load_batch, parse_param, Params, Scenario, EXPERIMENTS};

/// Result of running one scenario.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    /// `None` when the scenario was rejected before any computation.
    pub report: Option<Report>,
    pub meta: Option<Meta>,
}

/// Runs a scenario without touching the file system.
pub fn execute(sc: &Scenario) -> Outcome {
    let params = match sc.validate() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}: {e}", sc.name);
            return Outcome { exit_code: e.exit_code(), report: None, meta: None };
        }
    };
    let started_unix_ms = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0);
    let clock = Instant::now();
    let tol_scale = sc.tol_scale.unwrap_or(1.0);
    let seed = sc.seed.unwrap_or(0);
    let mut checks = Checks::new(tol_scale);
    let ctx = experiments::Ctx { scenario: sc, params: &params, seed };
    let result = experiments::run_experiment(&ctx, &mut checks);
    let failed = checks.items.iter().filter(|c| !c.pass).count();
    let (exit_code, error) = match result {
        Err(e) => (e.exit_code(), Some(e.to_string())),
        Ok(()) if failed > 0 => (EXIT_CONTRACT, None),
        Ok(()) => (EXIT_OK, None),
    };
    let report = Report {
        name: sc.name.clone(),
        experiment: sc.experiment.clone(),
        parent: sc.parent_label(experiments::default_parent(&sc.experiment)),
        seed,
        tol_scale,
        parameters: sc.params.clone(),
        passed: exit_code == EXIT_OK,
        checks: checks.items,
        error,
        exit_code,
    };
    let meta = Meta {
        name: sc.name.clone(),
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        started_unix_ms,
        elapsed_ms: clock.elapsed().as_secs_f64() * 1e3,
        exit_code,
        checks: report.checks.len(),
        failed,
    };
    Outcome { exit_code, report: Some(report), meta: Some(meta) }
}

/// Writes `<name>.report.json`, `<name>.report.csv` and `<name>.meta.json`.
pub fn write_outputs(dir: &Path, report: &Report, meta: &Meta) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{}.report.json", report.name)), report.to_json())?;
    std::fs::write(dir.join(format!("{}.report.csv", report.name)), report.to_csv())?;
    let mut m = serde_json::to_string_pretty(meta).expect("metadata serialises");
    m.push('\n');
    std::fs::write(dir.join(format!("{}.meta.json", report.name)), m)
}

/// Runs one scenario and writes its files under `scenario.out` or `default_out`.
pub fn run(sc: &Scenario, default_out: &Path) -> i32 {
    let outcome = execute(sc);
    if let (Some(report), Some(meta)) = (&outcome.report, &outcome.meta) {
        let dir = sc.out.clone().unwrap_or_else(|| default_out.to_path_buf());
        if let Err(e) = write_outputs(&dir, report, meta) {
            eprintln!("{}: cannot write reports to {}: {e}", sc.name, dir.display());
            return EXIT_SCHEMA;
        }
        if let Some(err) = &report.error {
            eprintln!("{}: {err}", sc.name);
        }
        eprintln!("{}: {} checks, {} failed, exit {}", sc.name, meta.checks, meta.failed, outcome.exit_code);
    }
    outcome.exit_code
}

/// Runs independent scenarios concurrently; the exit code is the largest one.
pub fn run_batch(scenarios: &[Scenario], default_out: &Path) -> i32 {
    let mut targets = BTreeSet::new();
    for sc in scenarios {
        let dir = sc.out.clone().unwrap_or_else(|| default_out.to_path_buf());
        if !targets.insert((dir, sc.name.clone())) {
            eprintln!("duplicate scenario name {:?} writing to the same directory", sc.name);
            return EXIT_SCHEMA;
        }
    }
    scenarios.par_iter().map(|sc| run(sc, default_out)).max().unwrap_or(EXIT_OK)
}

/// Built-in presets plus documents found in `QGWB_PRESET_DIR`, sorted by name.
pub fn preset_table() -> Vec<qg_core::presets::PresetInfo> {
    let mut rows = qg_core::presets::list_presets();
    let known: BTreeSet<String> = rows.iter().map(|r| r.name.clone()).collect();
    let mut docs: Vec<PathBuf> = scenario::preset_dirs()
        .iter()
        .filter_map(|d| std::fs::read_dir(d).ok())
        .flat_map(|it| it.filter_map(|e| e.ok().map(|e| e.path())))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    docs.sort();
    for path in docs {
        let Some(stem) = path.file_stem().and_then(|s| s.to_str()).map(String::from) else { continue };
        if known.contains(&stem) || rows.iter().any(|r| r.name == stem) {
            continue;
        }
        let Ok(q) = std::fs::read_to_string(&path).map_err(|_| ()).and_then(|t| qg_core::load_qg(&t).map_err(|_| ()))
        else {
            eprintln!("skipping {}: not a valid quantum group document", path.display());
            continue;
        };
        rows.push(qg_core::presets::PresetInfo {
            name: stem,
            kind: "document",
            dim: Some(q.dim()),
            kac: q.is_kac(),
            max_irrep_dim: q.max_irrep_dim(),
        });
    }
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    rows
}

/// The preset table as aligned text.
pub fn format_preset_table(rows: &[qg_core::presets::PresetInfo]) -> String {
    let mut s = format!("{:<16} {:<9} {:>5} {:>5} {:>9}\n", "name", "kind", "dim", "kac", "max_n");
    for r in rows {
        let dim = r.dim.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        s.push_str(&format!("{:<16} {:<9} {:>5} {:>5} {:>9}\n", r.name, r.kind, dim, r.kac, r.max_irrep_dim));
    }
    s
}
