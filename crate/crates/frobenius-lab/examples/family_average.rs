//! Averaged Lang-Trotter at desk scale: how often a_p hits the extremal
//! value -floor(2 sqrt p), averaged over the family y^2 = x^3 + tx + 1
//! with t in a Farey set. Individual curves hit it almost never; the
//! family average decays like a power of x but stays visibly positive.

use frobenius_lab::family::{CurveFamily, IntPoly};
use frobenius_lab::params::ParamSet;
use frobenius_lab::stats::{sweep, StatSource, Statistic, SweepOptions, TraceSequence};

fn main() -> frobenius_lab::Result<()> {
    let family = CurveFamily::new(IntPoly::new(vec![0, 1]), IntPoly::constant(1))?;
    let source = StatSource::Family {
        family,
        set: ParamSet::farey(20)?,
    };
    let stat = Statistic::Trace(TraceSequence::Extremal);
    let opts = SweepOptions {
        workers: 4,
        ..Default::default()
    };

    println!(
        "{:>6} {:>8} {:>12} {:>12}",
        "x", "primes", "total", "avg/param"
    );
    for x in [200u64, 1000, 5000] {
        let report = sweep(&source, &stat, x, &opts)?;
        println!(
            "{x:>6} {:>8} {:>12.0} {:>12.6}",
            report.rows.len(),
            report.total,
            report.avg_per_param()
        );
    }
    Ok(())
}
