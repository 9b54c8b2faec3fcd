//! Named experiments. Each preset fixes a family, a parameter set, a
//! statistic and a default sweep limit, and defines the diagnostic ratio
//! recorded in the summary:
//!
//! * count presets divide the observed total by the predicted bound shape
//!   (implied constants are unknown, so this is monitoring, not pass/fail);
//! * density presets record how far the normalized average sits from its
//!   limit (1/2 for the CM supersingular count, the Sato-Tate mass for
//!   angle windows).

use crate::error::{Error, Result};
use crate::runner::config::{
    CurveSpec, ExperimentConfig, FamilySpec, ParamSetSpec, SeqSpec, StatisticSpec,
};
use crate::stats::{st_density, AngleWindow, StatReport};

const PI_3: f64 = std::f64::consts::FRAC_PI_3;

/// Every preset name, in help order.
pub const PRESET_NAMES: [&str; 11] = [
    "deuring-cm",
    "lt-ab",
    "lt-j",
    "lt-ab-pairs",
    "lt-k",
    "lt-k-pairs",
    "st-farey",
    "lt-i",
    "lt-setsum",
    "lt-ki",
    "st-setsum",
];

/// The generic one-parameter family y^2 = x^3 + tx + 1 used whenever a
/// theorem only needs some nondegenerate family.
fn generic_family() -> FamilySpec {
    FamilySpec::Polynomials {
        f: vec![0, 1],
        g: vec![1],
    }
}

fn j_family() -> FamilySpec {
    FamilySpec::Preset {
        preset: "j-family".into(),
    }
}

fn extremal() -> StatisticSpec {
    StatisticSpec::Trace {
        seq: SeqSpec::Extremal,
    }
}

fn gauss_field() -> StatisticSpec {
    StatisticSpec::Field { d: -1 }
}

fn middle_window() -> StatisticSpec {
    StatisticSpec::Angle {
        alpha: PI_3,
        beta: 2.0 * PI_3,
    }
}

fn interval(t: u64) -> ParamSetSpec {
    ParamSetSpec::Interval { t }
}

fn sumset_i_t(t: u64) -> ParamSetSpec {
    let side: Vec<i64> = (1..=t as i64).collect();
    ParamSetSpec::Sumset {
        u: Some(side.clone()),
        v: Some(side),
        u_file: None,
        v_file: None,
    }
}

struct PresetDef {
    family: FamilySpec,
    paramset: Option<ParamSetSpec>,
    statistic: StatisticSpec,
    default_x: u64,
    default_t: Option<u64>,
}

fn definition(name: &str, t: Option<u64>) -> Result<PresetDef> {
    let def = match name {
        // supersingular count of the CM curve y^2 = x^3 + x
        "deuring-cm" => PresetDef {
            family: FamilySpec::Curve {
                curve: CurveSpec { a: 1, b: 0 },
            },
            paramset: None,
            statistic: StatisticSpec::Trace { seq: SeqSpec::Zero },
            default_x: 100_000,
            default_t: None,
        },
        // extremal-trace count over Farey parameters, generic family
        "lt-ab" => PresetDef {
            family: generic_family(),
            paramset: Some(ParamSetSpec::Farey { t: t.unwrap_or(50) }),
            statistic: extremal(),
            default_x: 2000,
            default_t: Some(50),
        },
        // the same statistic over the j-family, where the bound sharpens
        "lt-j" => PresetDef {
            family: j_family(),
            paramset: Some(ParamSetSpec::Farey { t: t.unwrap_or(50) }),
            statistic: extremal(),
            default_x: 2000,
            default_t: Some(50),
        },
        // parameters are sums of two Farey fractions
        "lt-ab-pairs" => PresetDef {
            family: generic_family(),
            paramset: Some(ParamSetSpec::FareyPairs { t: t.unwrap_or(30) }),
            statistic: extremal(),
            default_x: 2000,
            default_t: Some(30),
        },
        // fixed Frobenius field Q(i) over Farey parameters
        "lt-k" => PresetDef {
            family: generic_family(),
            paramset: Some(ParamSetSpec::Farey { t: t.unwrap_or(50) }),
            statistic: gauss_field(),
            default_x: 2000,
            default_t: Some(50),
        },
        "lt-k-pairs" => PresetDef {
            family: generic_family(),
            paramset: Some(ParamSetSpec::FareyPairs { t: t.unwrap_or(30) }),
            statistic: gauss_field(),
            default_x: 2000,
            default_t: Some(30),
        },
        // Sato-Tate window over Farey pair sums: an asymptotic equality
        "st-farey" => PresetDef {
            family: generic_family(),
            paramset: Some(ParamSetSpec::FareyPairs { t: t.unwrap_or(30) }),
            statistic: middle_window(),
            default_x: 2000,
            default_t: Some(30),
        },
        // integer parameters 1..T
        "lt-i" => PresetDef {
            family: generic_family(),
            paramset: Some(interval(t.unwrap_or(100))),
            statistic: extremal(),
            default_x: 10_000,
            default_t: Some(100),
        },
        // parameters u + v with U = V = {1..T}
        "lt-setsum" => PresetDef {
            family: generic_family(),
            paramset: Some(sumset_i_t(t.unwrap_or(40))),
            statistic: extremal(),
            default_x: 10_000,
            default_t: Some(40),
        },
        "lt-ki" => PresetDef {
            family: generic_family(),
            paramset: Some(interval(t.unwrap_or(200))),
            statistic: gauss_field(),
            default_x: 2000,
            default_t: Some(200),
        },
        // Sato-Tate window over set sums, j-family
        "st-setsum" => PresetDef {
            family: j_family(),
            paramset: Some(sumset_i_t(t.unwrap_or(40))),
            statistic: middle_window(),
            default_x: 10_000,
            default_t: Some(40),
        },
        other => {
            return Err(Error::Config(format!(
                "unknown preset {other:?}; known: {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    if t.is_some() && def.default_t.is_none() {
        return Err(Error::Config(format!("preset {name:?} has no parameter T")));
    }
    Ok(def)
}

/// Build the config for a named preset, with optional x and T overrides.
pub fn build_preset(name: &str, x: Option<u64>, t: Option<u64>) -> Result<ExperimentConfig> {
    let def = definition(name, t)?;
    Ok(ExperimentConfig {
        family: def.family,
        paramset: def.paramset,
        statistic: def.statistic,
        x: x.unwrap_or(def.default_x),
        census_cap: 5000,
        workers: 1,
        seed: 0,
        out_csv: None,
        out_json: None,
    })
}

/// The diagnostic recorded as `bound_ratio` for this preset's report.
pub fn bound_ratio(name: &str, config: &ExperimentConfig, report: &StatReport) -> Option<f64> {
    let x = config.x as f64;
    let t = config
        .paramset
        .as_ref()
        .map(|p| match p {
            ParamSetSpec::Farey { t }
            | ParamSetSpec::Interval { t }
            | ParamSetSpec::FareyPairs { t } => *t as f64,
            ParamSetSpec::Sumset { u, v, .. } => {
                let max = |side: &Option<Vec<i64>>| {
                    side.as_ref()
                        .and_then(|s| s.iter().max().copied())
                        .unwrap_or(0) as f64
                };
                max(u).max(max(v))
            }
        })
        .unwrap_or(0.0);
    let shape = match name {
        "deuring-cm" => return Some((report.ratio_to_pi() - 0.5).abs()),
        "st-farey" | "st-setsum" => {
            let window = AngleWindow::new(PI_3, 2.0 * PI_3).expect("valid");
            return Some((report.ratio_to_pi() - st_density(&window)).abs());
        }
        "lt-ab" => t * x.powf(11.0 / 8.0) + t * t * x.powf(7.0 / 8.0),
        "lt-j" => t * x.powf(5.0 / 4.0) + t * t * x.powf(3.0 / 4.0),
        "lt-ab-pairs" => t.powi(5) + t.powi(3) * x.powf(5.0 / 4.0) + t.powi(4) * x.powf(3.0 / 4.0),
        "lt-k" => t * x.powf(4.0 / 3.0) + t * t * x.powf(5.0 / 6.0),
        "lt-k-pairs" => t.powi(4) * x.powf(5.0 / 6.0) + t * t * x.powf(4.0 / 3.0),
        "lt-i" => t * t + t.sqrt() * x.powf(5.0 / 4.0),
        "lt-setsum" => {
            let uv = report.params_total as f64;
            t * uv + uv.powf(3.0 / 4.0) * x.powf(5.0 / 4.0)
        }
        "lt-ki" => t.sqrt() * x.powf(4.0 / 3.0) + t * x.powf(5.0 / 6.0),
        _ => return None,
    };
    Some(report.total / shape)
}
