use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use frobenius_lab::curves::CurveModP;
use frobenius_lab::family::CurveFamily;
use frobenius_lab::runner::{self, config::ExperimentConfig, suites};
use frobenius_lab::stats::fiber_census;

#[derive(Parser)]
#[command(
    name = "frobenius-lab",
    about = "Frobenius trace statistics for families of elliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an experiment described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a named preset experiment.
    Preset {
        name: String,
        /// Override the prime cutoff.
        #[arg(long)]
        x: Option<u64>,
        /// Override the parameter height.
        #[arg(long = "T")]
        t: Option<u64>,
        /// Directory for <name>.csv and <name>.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Run an acceptance bundle: oracle, identities, lemmas, theorems, all.
    Suite {
        name: String,
        /// Manifest path (default suite-<name>.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Frobenius trace of one curve at one prime.
    Trace {
        #[arg(long)]
        p: u64,
        #[arg(long = "A")]
        a: i64,
        #[arg(long = "B")]
        b: i64,
    },
    /// Print the fiber census of a preset family as CSV.
    Census {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        p: u64,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(runner::exit_code(&e) as u8)
        }
    }
}

fn dispatch(cmd: Cmd) -> frobenius_lab::Result<ExitCode> {
    match cmd {
        Cmd::Run { config } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let outcome = runner::run_config(&cfg, |_| None)?;
            print!("{}", outcome.summary.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Preset {
            name,
            x,
            t,
            out,
            workers,
        } => {
            let outcome = runner::run_preset(&name, x, t, out.as_deref(), workers)?;
            println!(
                "{name}: total {} over {} params at {} primes, avg/pi = {:.6}",
                outcome.report.total,
                outcome.report.params_total,
                outcome.report.rows.len(),
                outcome.report.ratio_to_pi()
            );
            if let Some(r) = outcome.summary.bound_ratio {
                println!("bound-shape ratio (diagnostic): {r:.6}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Suite { name, out } => {
            let report = suites::run_suite(&name, out.as_deref())?;
            for c in &report.criteria {
                println!("{}", c.line());
            }
            if report.passed {
                println!(
                    "suite {name}: all {} criteria passed",
                    report.criteria.len()
                );
                Ok(ExitCode::SUCCESS)
            } else {
                let failed = report.criteria.iter().filter(|c| !c.passed).count();
                println!("suite {name}: {failed} criteria FAILED");
                Ok(ExitCode::from(1))
            }
        }
        Cmd::Trace { p, a, b } => {
            let curve = CurveModP::new(p, a, b)?;
            println!("{}", curve.trace());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Census { preset, p } => {
            let family = match preset.as_str() {
                "j-family" => CurveFamily::j_family(),
                other => {
                    return Err(frobenius_lab::Error::Config(format!(
                        "unknown census preset {other:?}; known: j-family"
                    )))
                }
            };
            let census = fiber_census(&family, p)?;
            log::info!(
                "census of {preset} at p = {p}: {} fibers, {} excluded",
                census.size(),
                census.excluded()
            );
            println!("w,trace");
            for &(w, a) in census.entries() {
                println!("{w},{a}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
