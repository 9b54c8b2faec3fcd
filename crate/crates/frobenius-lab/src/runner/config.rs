//! Experiment configuration: one flat JSON document describing a family (or
//! fixed curve), an optional parameter set, a statistic, and sweep limits.
//!
//! The configuration echoed into the JSON summary deliberately omits the
//! worker count and output paths, so that runs differing only in parallelism
//! or destination produce byte-identical summaries.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{CurveFamily, IntPoly};
use crate::params::ParamSet;
use crate::stats::{AngleWindow, StatSource, Statistic, TraceSequence};

fn default_census_cap() -> u64 {
    5000
}

fn default_workers() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: FamilySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paramset: Option<ParamSetSpec>,
    pub statistic: StatisticSpec,
    /// Sweep all good primes 5 <= p <= x.
    pub x: u64,
    #[serde(default = "default_census_cap")]
    pub census_cap: u64,
    /// Not echoed: parallelism must not affect results.
    #[serde(default = "default_workers", skip_serializing)]
    pub workers: usize,
    /// Reserved for randomized sampling; echoed so runs are reproducible.
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing)]
    pub out_csv: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub out_json: Option<PathBuf>,
}

/// A family of curves, a named preset, or one fixed curve.
/// Tried in order: {"preset": ...}, {"curve": {"A":..,"B":..}}, {"f":..,"g":..}.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Preset { preset: String },
    Curve { curve: CurveSpec },
    Polynomials { f: Vec<i64>, g: Vec<i64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSpec {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamSetSpec {
    Farey {
        #[serde(rename = "T")]
        t: u64,
    },
    Interval {
        #[serde(rename = "T")]
        t: u64,
    },
    Sumset {
        #[serde(rename = "U", default, skip_serializing_if = "Option::is_none")]
        u: Option<Vec<i64>>,
        #[serde(rename = "V", default, skip_serializing_if = "Option::is_none")]
        v: Option<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        u_file: Option<PathBuf>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        v_file: Option<PathBuf>,
    },
    FareyPairs {
        #[serde(rename = "T")]
        t: u64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "stat", rename_all = "snake_case")]
pub enum StatisticSpec {
    Trace { seq: SeqSpec },
    Field { d: i64 },
    Angle { alpha: f64, beta: f64 },
    Census { ell: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeqSpec {
    Constant {
        a: i64,
    },
    Zero,
    Extremal,
    /// Keys are decimal primes; absent primes never match.
    Custom {
        table: BTreeMap<String, i64>,
    },
}

impl ExperimentConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config parse: {e}")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.x < 5 {
            return Err(Error::Config(format!("x must be >= 5, got {}", self.x)));
        }
        if self.workers < 1 {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        Ok(())
    }

    /// census_cap is clamped to x rather than rejected, so one config can be
    /// rerun at smaller x without edits.
    pub fn effective_census_cap(&self) -> u64 {
        self.census_cap.min(self.x)
    }

    /// Resolve into the library's sweep inputs.
    pub fn build(&self) -> Result<(StatSource, Statistic)> {
        self.validate()?;
        let stat = self.statistic.build()?;
        let source = match self.family.build()? {
            BuiltFamily::Fixed { a, b } => {
                if self.paramset.is_some() {
                    return Err(Error::Config(
                        "a fixed curve takes no paramset; drop one or the other".into(),
                    ));
                }
                StatSource::fixed(a, b)?
            }
            BuiltFamily::Family(family) => {
                let set = match (&self.paramset, &stat) {
                    (Some(spec), _) => spec.build()?,
                    // the census statistic sweeps every fiber; no set needed
                    (None, Statistic::Census { .. }) => ParamSet::interval(1)?,
                    (None, _) => {
                        return Err(Error::Config("a family statistic needs a paramset".into()))
                    }
                };
                StatSource::Family { family, set }
            }
        };
        Ok((source, stat))
    }
}

pub enum BuiltFamily {
    Fixed { a: i64, b: i64 },
    Family(CurveFamily),
}

impl FamilySpec {
    pub fn build(&self) -> Result<BuiltFamily> {
        match self {
            FamilySpec::Preset { preset } => match preset.as_str() {
                "j-family" => Ok(BuiltFamily::Family(CurveFamily::j_family())),
                other => Err(Error::Config(format!(
                    "unknown family preset {other:?} (try \"j-family\")"
                ))),
            },
            FamilySpec::Curve { curve } => Ok(BuiltFamily::Fixed {
                a: curve.a,
                b: curve.b,
            }),
            FamilySpec::Polynomials { f, g } => {
                let fam = CurveFamily::new(IntPoly::new(f.clone()), IntPoly::new(g.clone()))?;
                if !fam.is_nondegenerate() {
                    let why = if fam.delta().is_zero() {
                        "its discriminant polynomial is identically zero"
                    } else {
                        "its j-invariant is constant"
                    };
                    return Err(Error::DegenerateFamily(format!(
                        "family f={f:?} g={g:?} rejected: {why}"
                    )));
                }
                Ok(BuiltFamily::Family(fam))
            }
        }
    }
}

impl ParamSetSpec {
    pub fn build(&self) -> Result<ParamSet> {
        match self {
            ParamSetSpec::Farey { t } => ParamSet::farey(*t),
            ParamSetSpec::Interval { t } => ParamSet::interval(*t),
            ParamSetSpec::FareyPairs { t } => ParamSet::farey_pairs(*t),
            ParamSetSpec::Sumset {
                u,
                v,
                u_file,
                v_file,
            } => {
                let u = side("U", u, u_file)?;
                let v = side("V", v, v_file)?;
                ParamSet::sum_set(u, v)
            }
        }
    }
}

fn side(name: &str, inline: &Option<Vec<i64>>, file: &Option<PathBuf>) -> Result<Vec<i64>> {
    match (inline, file) {
        (Some(vals), None) => Ok(vals.clone()),
        (None, Some(path)) => read_integer_file(path),
        (Some(_), Some(_)) => Err(Error::Config(format!(
            "sumset side {name} given both inline and as a file"
        ))),
        (None, None) => Err(Error::Config(format!(
            "sumset side {name} missing (inline array or {}_file)",
            name.to_lowercase()
        ))),
    }
}

/// One integer per line; blank lines and `#` comments ignored.
fn read_integer_file(path: &Path) -> Result<Vec<i64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(
            line.parse::<i64>()
                .map_err(|e| Error::Config(format!("{}:{}: {e}", path.display(), i + 1)))?,
        );
    }
    Ok(out)
}

impl StatisticSpec {
    pub fn build(&self) -> Result<Statistic> {
        match self {
            StatisticSpec::Trace { seq } => Ok(Statistic::Trace(seq.build()?)),
            StatisticSpec::Field { d } => Statistic::field(*d),
            StatisticSpec::Angle { alpha, beta } => {
                Ok(Statistic::Angle(AngleWindow::new(*alpha, *beta)?))
            }
            StatisticSpec::Census { ell } => Statistic::census(*ell),
        }
    }
}

impl SeqSpec {
    pub fn build(&self) -> Result<TraceSequence> {
        match self {
            SeqSpec::Constant { a } => Ok(TraceSequence::Constant(*a)),
            SeqSpec::Zero => Ok(TraceSequence::Constant(0)),
            SeqSpec::Extremal => Ok(TraceSequence::Extremal),
            SeqSpec::Custom { table } => {
                let mut parsed = BTreeMap::new();
                for (k, v) in table {
                    let p: u64 = k.parse().map_err(|_| {
                        Error::Config(format!("custom table key {k:?} is not a prime"))
                    })?;
                    parsed.insert(p, *v);
                }
                Ok(TraceSequence::Custom(parsed))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_family_shapes() {
        let c: ExperimentConfig = ExperimentConfig::from_json(
            r#"{"family": {"preset": "j-family"},
                "paramset": {"kind": "farey", "T": 10},
                "statistic": {"stat": "trace", "seq": {"kind": "zero"}},
                "x": 100}"#,
        )
        .unwrap();
        assert!(matches!(c.family, FamilySpec::Preset { .. }));
        assert_eq!(c.census_cap, 5000);
        assert_eq!(c.workers, 1);
        let (source, _) = c.build().unwrap();
        assert!(matches!(source, StatSource::Family { .. }));

        let c = ExperimentConfig::from_json(
            r#"{"family": {"curve": {"A": 1, "B": 0}},
                "statistic": {"stat": "trace", "seq": {"kind": "zero"}},
                "x": 100}"#,
        )
        .unwrap();
        assert!(matches!(
            c.build().unwrap().0,
            StatSource::Fixed { a: 1, b: 0 }
        ));

        let c = ExperimentConfig::from_json(
            r#"{"family": {"f": [0, 1], "g": [1]},
                "paramset": {"kind": "interval", "T": 5},
                "statistic": {"stat": "field", "d": -1},
                "x": 50}"#,
        )
        .unwrap();
        c.build().unwrap();
    }

    #[test]
    fn parses_statistics() {
        let texts = [
            r#"{"stat": "trace", "seq": {"kind": "constant", "a": -2}}"#,
            r#"{"stat": "trace", "seq": {"kind": "extremal"}}"#,
            r#"{"stat": "trace", "seq": {"kind": "custom", "table": {"5": -3, "7": 0}}}"#,
            r#"{"stat": "field", "d": -11}"#,
            r#"{"stat": "angle", "alpha": 0.0, "beta": 1.5}"#,
            r#"{"stat": "census", "ell": 17}"#,
        ];
        for t in texts {
            let spec: StatisticSpec = serde_json::from_str(t).unwrap();
            spec.build().unwrap();
        }
        let bad: StatisticSpec = serde_json::from_str(r#"{"stat": "field", "d": 3}"#).unwrap();
        assert!(bad.build().is_err());
    }

    #[test]
    fn validation_rules() {
        let mut c = ExperimentConfig::from_json(
            r#"{"family": {"curve": {"A": 1, "B": 1}},
                "statistic": {"stat": "angle", "alpha": 0.0, "beta": 3.0},
                "x": 4}"#,
        )
        .unwrap();
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        c.x = 100;
        c.validate().unwrap();
        c.workers = 0;
        assert!(c.validate().is_err());
        c.workers = 2;
        c.census_cap = 400;
        assert_eq!(c.effective_census_cap(), 100);
    }

    #[test]
    fn fixed_curve_rejects_paramset() {
        let c = ExperimentConfig::from_json(
            r#"{"family": {"curve": {"A": 1, "B": 1}},
                "paramset": {"kind": "farey", "T": 5},
                "statistic": {"stat": "trace", "seq": {"kind": "zero"}},
                "x": 100}"#,
        )
        .unwrap();
        assert!(matches!(c.build(), Err(Error::Config(_))));
    }

    #[test]
    fn singular_curve_is_degenerate_not_config() {
        let c = ExperimentConfig::from_json(
            r#"{"family": {"f": [0], "g": [0]},
                "paramset": {"kind": "farey", "T": 5},
                "statistic": {"stat": "trace", "seq": {"kind": "zero"}},
                "x": 100}"#,
        )
        .unwrap();
        assert!(matches!(c.build(), Err(Error::DegenerateFamily(_))));
    }

    #[test]
    fn sumset_sides_from_files() {
        let dir = tempfile::tempdir().unwrap();
        let upath = dir.path().join("u.txt");
        std::fs::write(&upath, "1\n2\n\n# comment\n3\n").unwrap();
        let spec = ParamSetSpec::Sumset {
            u: None,
            v: Some(vec![4, 5]),
            u_file: Some(upath),
            v_file: None,
        };
        let set = spec.build().unwrap();
        assert_eq!(set.len(), 6);
        let bad = ParamSetSpec::Sumset {
            u: Some(vec![1]),
            v: Some(vec![1]),
            u_file: Some(PathBuf::from("/nope")),
            v_file: None,
        };
        assert!(bad.build().is_err());
    }

    #[test]
    fn echo_excludes_workers_and_paths() {
        let c = ExperimentConfig::from_json(
            r#"{"family": {"preset": "j-family"},
                "paramset": {"kind": "farey_pairs", "T": 7},
                "statistic": {"stat": "angle", "alpha": 0.5, "beta": 2.5},
                "x": 100, "workers": 8,
                "out_csv": "/tmp/a.csv", "out_json": "/tmp/a.json"}"#,
        )
        .unwrap();
        let echoed = serde_json::to_string(&c).unwrap();
        assert!(!echoed.contains("workers"));
        assert!(!echoed.contains("out_csv"));
        assert!(!echoed.contains("out_json"));
        assert!(echoed.contains("farey_pairs"));
        assert!(echoed.contains("\"T\":7"));
    }

    #[test]
    fn custom_table_keys_must_parse() {
        let spec: StatisticSpec = serde_json::from_str(
            r#"{"stat": "trace", "seq": {"kind": "custom", "table": {"seven": 1}}}"#,
        )
        .unwrap();
        assert!(spec.build().is_err());
    }
}
