//! Exact count-scale discrepancy of normalized traces a_p / 2 sqrt(p)
//! against the semicircle law, next to the Chebyshev-sum upper bound.
//! The bound needs no sorting and is what the averaged arguments use; the
//! exact scan shows how much it gives away.

use frobenius_lab::harmonic::{discrepancy, niederreiter_report};
use frobenius_lab::stats::{trace_values, StatSource, SweepOptions};

fn main() -> frobenius_lab::Result<()> {
    let source = StatSource::fixed(-2, 3)?;
    let opts = SweepOptions {
        workers: 4,
        ..Default::default()
    };
    println!(
        "{:>7} {:>6} {:>10} {:>10} {:>7}",
        "x", "m", "exact D", "bound", "ratio"
    );
    for x in [1_000u64, 10_000, 100_000] {
        let traces = trace_values(&source, x, &opts)?;
        let points: Vec<f64> = traces
            .iter()
            .map(|&(p, a)| a as f64 / (2.0 * (p as f64).sqrt()))
            .collect();
        let exact = discrepancy(&points)?;
        let report = niederreiter_report(&points, 40)?;
        println!(
            "{x:>7} {:>6} {exact:>10.2} {:>10.2} {:>7.3}",
            points.len(),
            report.rhs,
            report.ratio()
        );
    }
    Ok(())
}
