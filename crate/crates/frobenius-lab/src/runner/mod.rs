//! Experiment orchestration: resolve a config, sweep, and emit artifacts.
//!
//! Results are computed entirely in memory and written at the end, so a
//! failed run leaves no partial CSV behind. Exit codes: 0 success, 1 failed
//! suite criterion, 2 config errors, 3 degenerate family or singular curve,
//! 4 violated lemma hypothesis.

pub mod config;
pub mod output;
pub mod presets;
pub mod suites;

use std::time::Instant;

use crate::error::{Error, Result};
use crate::stats::{sweep, StatReport, SweepOptions};

use config::ExperimentConfig;
use output::Summary;

/// Everything a run produced, before or after being written to disk.
pub struct RunOutcome {
    pub report: StatReport,
    pub summary: Summary,
    pub csv: String,
}

/// Execute a config end to end. `bound` computes the preset diagnostic from
/// the finished report (plain runs pass `|_| None`). Files are only written
/// when the config names them.
pub fn run_config(
    cfg: &ExperimentConfig,
    bound: impl FnOnce(&StatReport) -> Option<f64>,
) -> Result<RunOutcome> {
    let started = Instant::now();
    let (source, stat) = cfg.build()?;
    let opts = SweepOptions {
        census_cap: cfg.effective_census_cap(),
        workers: cfg.workers,
    };
    let report = sweep(&source, &stat, cfg.x, &opts)?;
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let bound_ratio = bound(&report);
    let summary = Summary::new(cfg, &report, bound_ratio, elapsed_ms);
    let csv = output::csv_string(&report.rows);
    if let Some(path) = &cfg.out_csv {
        output::write_text(path, &csv)?;
    }
    if let Some(path) = &cfg.out_json {
        output::write_text(path, &summary.to_json())?;
    }
    Ok(RunOutcome {
        report,
        summary,
        csv,
    })
}

/// Run a named preset, writing `<name>.csv` and `<name>.json` under `out`.
pub fn run_preset(
    name: &str,
    x: Option<u64>,
    t: Option<u64>,
    out: Option<&std::path::Path>,
    workers: usize,
) -> Result<RunOutcome> {
    let mut cfg = presets::build_preset(name, x, t)?;
    cfg.workers = workers.max(1);
    if let Some(dir) = out {
        cfg.out_csv = Some(dir.join(format!("{name}.csv")));
        cfg.out_json = Some(dir.join(format!("{name}.json")));
    }
    let cfg_for_bound = cfg.clone();
    run_config(&cfg, |report| {
        presets::bound_ratio(name, &cfg_for_bound, report)
    })
}

/// Process exit code for an error, per the CLI contract.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SuiteFailed(_) => 1,
        Error::DegenerateFamily(_) | Error::SingularCurve { .. } => 3,
        Error::HypothesisViolation(_) => 4,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::config::ExperimentConfig;

    #[test]
    fn run_config_end_to_end() {
        let dir = tempfile::tempdir().unwrap();
        let csv_path = dir.path().join("out.csv");
        let json_path = dir.path().join("out.json");
        let cfg = ExperimentConfig::from_json(&format!(
            r#"{{"family": {{"curve": {{"A": 1, "B": 0}}}},
                 "statistic": {{"stat": "trace", "seq": {{"kind": "zero"}}}},
                 "x": 100,
                 "out_csv": {csv:?}, "out_json": {json:?}}}"#,
            csv = csv_path,
            json = json_path,
        ))
        .unwrap();
        let outcome = run_config(&cfg, |_| None).unwrap();
        // 12 supersingular primes of y^2 = x^3 + x below 100
        assert_eq!(outcome.report.total, 12.0);
        assert_eq!(outcome.summary.totals.pi_x, 25);
        let csv = std::fs::read_to_string(&csv_path).unwrap();
        assert_eq!(csv, outcome.csv);
        output::verify_csv(&csv).unwrap();
        let json = std::fs::read_to_string(&json_path).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["totals"]["contribution"], 12.0);
        assert!(parsed["bound_ratio"].is_null());
        // key order is part of the format; Value's map sorts, so check the
        // text itself (top-level keys sit at two-space indent)
        let order = [
            "config",
            "totals",
            "avg_per_param",
            "ratio_to_pi",
            "bound_ratio",
            "elapsed_ms",
        ];
        let positions: Vec<usize> = order
            .iter()
            .map(|k| {
                json.find(&format!("\n  \"{k}\""))
                    .unwrap_or_else(|| panic!("{k} missing"))
            })
            .collect();
        assert!(
            positions.windows(2).all(|w| w[0] < w[1]),
            "key order {positions:?}"
        );
    }

    #[test]
    fn preset_writes_named_files() {
        let dir = tempfile::tempdir().unwrap();
        let outcome = run_preset("lt-ab", Some(200), Some(6), Some(dir.path()), 1).unwrap();
        assert!(dir.path().join("lt-ab.csv").is_file());
        assert!(dir.path().join("lt-ab.json").is_file());
        assert!(outcome.summary.bound_ratio.is_some());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::InvalidInput("x".into())), 2);
        assert_eq!(exit_code(&Error::DegenerateFamily("x".into())), 3);
        assert_eq!(exit_code(&Error::HypothesisViolation("x".into())), 4);
        assert_eq!(exit_code(&Error::SuiteFailed("x".into())), 1);
    }
}
