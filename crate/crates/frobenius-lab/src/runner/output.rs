//! Output formats: the per-prime CSV and the JSON summary.
//!
//! Both are fully deterministic functions of the computed report, so runs
//! that differ only in parallelism emit identical bytes (the wall-time field
//! excepted, which is why comparisons null it first).

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::runner::config::ExperimentConfig;
use crate::stats::{StatReport, StatRow};

pub const CSV_HEADER: &str = "p,param_count,contribution,cumulative,pi_p,expected";

/// Floats with 12 significant digits, integers plain: the fixed CSV number
/// format. Mirrors printf %.12g.
pub fn format_sig12(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    if v == v.trunc() && v.abs() < 1e12 {
        return format!("{}", v as i64);
    }
    let sci = format!("{v:.11e}");
    let epos = sci.find('e').expect("scientific format");
    let exp: i32 = sci[epos + 1..].parse().expect("exponent");
    if (-4..12).contains(&exp) {
        let frac = (11 - exp).max(0) as usize;
        let mut s = format!("{v:.frac$}");
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    } else {
        let mut m = sci[..epos].to_string();
        if m.contains('.') {
            while m.ends_with('0') {
                m.pop();
            }
            if m.ends_with('.') {
                m.pop();
            }
        }
        format!("{m}e{exp}")
    }
}

/// The CSV document: header plus one row per swept prime, LF endings, with a
/// running cumulative column.
pub fn csv_string(rows: &[StatRow]) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    let mut cumulative = 0.0f64;
    for r in rows {
        cumulative += r.contribution;
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.p,
            r.param_count,
            format_sig12(r.contribution),
            format_sig12(cumulative),
            r.pi_p,
            format_sig12(r.expected),
        ));
    }
    out
}

/// Parse a CSV produced by [`csv_string`] and re-verify the cumulative
/// column against the prefix sums. Returns the number of data rows.
pub fn verify_csv(text: &str) -> Result<usize> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(Error::InvalidInput(format!("bad CSV header: {other:?}"))),
    }
    let mut cumulative = 0.0f64;
    let mut n = 0;
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::InvalidInput(format!(
                "row {}: expected 6 fields",
                i + 1
            )));
        }
        let contribution: f64 = fields[2]
            .parse()
            .map_err(|e| Error::InvalidInput(format!("row {}: {e}", i + 1)))?;
        let stated: f64 = fields[3]
            .parse()
            .map_err(|e| Error::InvalidInput(format!("row {}: {e}", i + 1)))?;
        cumulative += contribution;
        // 12 significant digits survive a parse round trip to ~1e-11 relative
        if (stated - cumulative).abs() > 1e-9 * (1.0 + cumulative.abs()) {
            return Err(Error::InvalidInput(format!(
                "row {}: cumulative {stated} != prefix sum {cumulative}",
                i + 1
            )));
        }
        cumulative = stated;
        n += 1;
    }
    Ok(n)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Totals {
    pub contribution: f64,
    /// Parameter count with multiplicity (the normalization denominator).
    pub params: u64,
    /// Number of primes swept (rows).
    pub primes: u64,
    pub pi_x: u64,
}

/// The JSON summary. Field order is part of the format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub config: ExperimentConfig,
    pub totals: Totals,
    pub avg_per_param: f64,
    pub ratio_to_pi: f64,
    /// Preset-specific diagnostic (bound-shape or deviation); null for plain
    /// runs. Never a pass/fail gate.
    pub bound_ratio: Option<f64>,
    pub elapsed_ms: u64,
}

impl Summary {
    pub fn new(
        config: &ExperimentConfig,
        report: &StatReport,
        bound_ratio: Option<f64>,
        elapsed_ms: u64,
    ) -> Self {
        Summary {
            config: config.clone(),
            totals: Totals {
                contribution: report.total,
                params: report.params_total,
                primes: report.rows.len() as u64,
                pi_x: report.pi_x,
            },
            avg_per_param: report.avg_per_param(),
            ratio_to_pi: report.ratio_to_pi(),
            bound_ratio,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

/// Write atomically enough for our purposes: build in memory, then write;
/// remove the file if the write fails partway.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let write = (|| -> std::io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(text.as_bytes())?;
        f.flush()
    })();
    if let Err(e) = write {
        let _ = std::fs::remove_file(path);
        return Err(e.into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(3.0), "3");
        assert_eq!(format_sig12(-17.0), "-17");
        assert_eq!(format_sig12(0.5), "0.5");
        assert_eq!(format_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig12(1234.5), "1234.5");
        assert_eq!(format_sig12(1e-7), "1e-7");
        assert_eq!(format_sig12(1.5e13), "1.5e13");
        assert_eq!(format_sig12(123456789012345.0), "1.23456789012e14");
        assert_eq!(format_sig12(-0.001953125), "-0.001953125");
        assert_eq!(format_sig12(std::f64::consts::PI), "3.14159265359");
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![
            StatRow {
                p: 5,
                param_count: 3,
                contribution: 1.0,
                pi_p: 3,
                expected: 0.9,
            },
            StatRow {
                p: 7,
                param_count: 3,
                contribution: 0.0,
                pi_p: 4,
                expected: 0.9,
            },
            StatRow {
                p: 11,
                param_count: 2,
                contribution: 2.0,
                pi_p: 5,
                expected: 0.6,
            },
        ];
        let text = csv_string(&rows);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(lines.next().unwrap(), "5,3,1,1,3,0.9");
        assert_eq!(lines.next().unwrap(), "7,3,0,1,4,0.9");
        assert_eq!(lines.next().unwrap(), "11,2,2,3,5,0.6");
        assert!(text.ends_with('\n') && !text.contains('\r'));
        assert_eq!(verify_csv(&text).unwrap(), 3);
    }

    #[test]
    fn verify_csv_rejects_corruption() {
        let good =
            "p,param_count,contribution,cumulative,pi_p,expected\n5,1,1,1,3,0\n7,1,1,2,4,0\n";
        assert_eq!(verify_csv(good).unwrap(), 2);
        let bad_header = good.replace("pi_p", "pip");
        assert!(verify_csv(&bad_header).is_err());
        let bad_cum = good.replace("7,1,1,2", "7,1,1,3");
        assert!(verify_csv(&bad_cum).is_err());
    }

    #[test]
    fn cleanup_on_failed_write() {
        // writing into a directory path fails and must not leave the target
        let dir = tempfile::tempdir().unwrap();
        let as_file = dir.path().join("sub");
        std::fs::create_dir(&as_file).unwrap();
        assert!(write_text(&as_file, "x").is_err());
        assert!(as_file.is_dir()); // untouched
        let ok = dir.path().join("new/dir/out.csv");
        write_text(&ok, "hello\n").unwrap();
        assert_eq!(std::fs::read_to_string(&ok).unwrap(), "hello\n");
    }
}
