//! Complete exponential sums of Chebyshev-weighted traces over the fibers
//! of the j-family. Square-root cancellation means |S| stays a small
//! multiple of n sqrt(p); the analytic arguments only ever need that.

use frobenius_lab::family::CurveFamily;
use frobenius_lab::harmonic::michel_sum;
use frobenius_lab::stats::fiber_census;

fn main() -> frobenius_lab::Result<()> {
    let family = CurveFamily::j_family();
    println!(
        "{:>6} {:>3} {:>3} {:>12} {:>14}",
        "p", "n", "m", "|S|", "|S|/(n sqrt p)"
    );
    for p in [101u64, 499, 1009] {
        let census = fiber_census(&family, p)?;
        for n in [1u32, 2, 5] {
            for m in [0u64, 1] {
                let s = michel_sum(&census, n, m)?;
                let scaled = s.norm() / (n as f64 * (p as f64).sqrt());
                println!("{p:>6} {n:>3} {m:>3} {:>12.4} {scaled:>14.4}", s.norm());
            }
        }
    }
    Ok(())
}
